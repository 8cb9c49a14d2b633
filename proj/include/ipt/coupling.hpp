#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "ipt/half_int.hpp"
#include "ipt/quadrature.hpp"
#include "ipt/rational.hpp"
#include "ipt/ssr.hpp"

namespace ipt {

// Spins j3 reachable by coupling j1 and j2: |j1-j2| .. j1+j2 in unit steps.
inline std::vector<HalfInt> cg_series(HalfInt j1, HalfInt j2) {
    if (j1.is_negative() || j2.is_negative()) throw ArgumentError("spins must be nonnegative");
    std::vector<HalfInt> out;
    for (int t = (j1 - j2).abs().twice(); t <= (j1 + j2).twice(); t += 2)
        out.push_back(HalfInt::from_twice(t));
    return out;
}

// Triangle admissibility including integrality of j1+j2+j3.
inline bool triangle_ok(HalfInt j1, HalfInt j2, HalfInt j3) {
    if ((j1 + j2 + j3).twice() % 2 != 0) return false;
    return (j1 - j2).abs() <= j3 && j3 <= j1 + j2;
}

namespace detail {

// Racah's closed form: the coefficient is S * sqrt(P) with S rational and
// P a positive rational, evaluated here in exact big-integer arithmetic.
inline SSR cgc_uncached(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
    const auto t = [](HalfInt a, HalfInt b) { return (a.twice() + b.twice()) / 2; };  // a+b as int
    const auto d = [](HalfInt a, HalfInt b) { return (a.twice() - b.twice()) / 2; };  // a-b as int

    // prefactor (2J+1) * triangle(j1 j2 J) * prod (j +- m)!
    Rational pref(J.twice() + 1);
    const int a1 = d(j1 + j2, J);
    const int a2 = t(j1 - j2, J);
    const int a3 = t(j2 - j1, J);
    const int a4 = t(j1 + j2, J) + 1;
    pref *= Rational(factorial(a1) * factorial(a2) * factorial(a3), factorial(a4));
    pref *= Rational(factorial(t(j1, m1)) * factorial(d(j1, m1)) * factorial(t(j2, m2)) *
                         factorial(d(j2, m2)) * factorial(t(J, M)) * factorial(d(J, M)),
                     1);

    const int b1 = a1;                         // j1+j2-J
    const int b2 = d(j1, m1);                  // j1-m1
    const int b3 = t(j2, m2);                  // j2+m2
    const int c1 = t(J - j2, m1);              // J-j2+m1
    const int c2 = d(J - j1, m2);              // J-j1-m2

    int kmin = 0;
    if (-c1 > kmin) kmin = -c1;
    if (-c2 > kmin) kmin = -c2;
    int kmax = b1;
    if (b2 < kmax) kmax = b2;
    if (b3 < kmax) kmax = b3;

    Rational sum = 0;
    for (int k = kmin; k <= kmax; ++k) {
        Rational term(1, factorial(k) * factorial(b1 - k) * factorial(b2 - k) * factorial(b3 - k) *
                             factorial(c1 + k) * factorial(c2 + k));
        if (k % 2 != 0) term = -term;
        sum += term;
    }
    if (sum == 0) return SSR();
    return SSR(sgn(sum), sum * sum * pref);
}

inline bool pack_key(std::uint64_t& key, std::initializer_list<int> vals) {
    key = 0;
    for (int v : vals) {
        const int off = v + 512;
        if (off < 0 || off >= 1024) return false;
        key = (key << 10) | static_cast<std::uint64_t>(off);
    }
    return true;
}

}  // namespace detail

// Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> in the Condon-Shortley
// convention, exact. Selection-rule failures (M != m1+m2, triangle, |M|>J)
// give an exact zero; a magnetic number of the wrong parity for its spin
// is a caller bug and throws.
inline SSR cgc(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
    if (j1.is_negative() || j2.is_negative() || J.is_negative())
        throw ArgumentError("spins must be nonnegative");
    for (auto [j, m] : {std::pair{j1, m1}, {j2, m2}, {J, M}})
        if ((j.twice() - m.twice()) % 2 != 0)
            throw ArgumentError("magnetic number " + m.str() + " has wrong parity for spin " + j.str());

    if ((m1 + m2).twice() != M.twice()) return SSR();
    if (!triangle_ok(j1, j2, J)) return SSR();
    if (m1.abs() > j1 || m2.abs() > j2 || M.abs() > J) return SSR();

    std::uint64_t key;
    if (detail::pack_key(key, {j1.twice(), m1.twice(), j2.twice(), m2.twice(), J.twice(), M.twice()})) {
        thread_local std::map<std::uint64_t, SSR> cache;
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        SSR val = detail::cgc_uncached(j1, m1, j2, m2, J, M);
        cache.emplace(key, val);
        return val;
    }
    return detail::cgc_uncached(j1, m1, j2, m2, J, M);
}

// Wigner 3j symbol, exact:
//   (j1 j2 j3; m1 m2 m3) = (-1)^(j1-j2-m3) <j1 m1; j2 m2 | j3 -m3> / sqrt(2 j3 + 1).
inline SSR wigner3j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1, HalfInt m2, HalfInt m3) {
    if ((m1 + m2 + m3).twice() != 0) {
        // still validate parity so bad input does not silently pass
        for (auto [j, m] : {std::pair{j1, m1}, {j2, m2}, {j3, m3}})
            if ((j.twice() - m.twice()) % 2 != 0)
                throw ArgumentError("magnetic number " + m.str() + " has wrong parity for spin " + j.str());
        return SSR();
    }
    SSR c = cgc(j1, m1, j2, m2, j3, -m3);
    if (c.is_zero()) return c;
    c = SSR(c.sign(), c.mag2() / (j3.twice() + 1));
    const int twice_ph = j1.twice() - j2.twice() - m3.twice();
    // exponent is integral whenever the coefficient is nonzero
    if (((twice_ph / 2) % 2 + 2) % 2 == 1) c = -c;
    return c;
}

// Dimension of the invariant subspace of V_{j1} x ... x V_{jn}: the
// multiplicity of total spin 0, counted by the coupling recursion.
inline std::int64_t inv_dim_exact(const std::vector<HalfInt>& spins) {
    if (spins.empty()) throw ArgumentError("need at least one spin");
    std::map<int, BigInt> cur{{spins[0].twice(), BigInt(1)}};
    for (std::size_t i = 1; i < spins.size(); ++i) {
        if (spins[i].is_negative()) throw ArgumentError("spins must be nonnegative");
        std::map<int, BigInt> nxt;
        for (const auto& [ts, cnt] : cur) {
            const int tj = spins[i].twice();
            for (int tt = std::abs(ts - tj); tt <= ts + tj; tt += 2) nxt[tt] += cnt;
        }
        cur = std::move(nxt);
    }
    auto it = cur.find(0);
    if (it == cur.end()) return 0;
    if (it->second > BigInt(std::int64_t(9007199254740992))) throw ResourceError("invariant dimension too large");
    return it->second.convert_to<std::int64_t>();
}

// Same dimension by the Weyl group integral
//   (1/pi) Int_0^{2 pi} sin^2(theta/2) prod_i chi_{j_i}(theta) d theta,
// chi_j(theta) = sin((j+1/2) theta) / sin(theta/2), via Gauss-Legendre.
// The class parameter must run over the full [0, 2 pi]: half-integer
// characters are antisymmetric about theta = pi, so a half-domain shortcut
// is valid only when the total twice-spin is even. The result must land
// within 1e-6 of an integer; the node count follows the fixed schedule and
// doubles up to three times before giving up.
inline std::int64_t inv_dim_integral(const std::vector<HalfInt>& spins) {
    if (spins.empty()) throw ArgumentError("need at least one spin");
    int sum_tj = 0;
    for (HalfInt j : spins) {
        if (j.is_negative()) throw ArgumentError("spins must be nonnegative");
        sum_tj += j.twice();
    }
    const double pi = std::acos(-1.0);
    int n = 64 * (1 + (sum_tj + 7) / 8);
    for (int attempt = 0; attempt < 4; ++attempt, n *= 2) {
        const QuadRule& rule = gauss_legendre(n);
        double acc = 0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double theta = pi * (rule.nodes[k] + 1.0);
            const double s = std::sin(theta / 2.0);
            double f = s * s;
            for (HalfInt j : spins) f *= std::sin((j.twice() + 1) * theta / 2.0) / s;
            acc += rule.weights[k] * f;
        }
        // d theta = pi dx cancels the 1/pi prefactor.
        const double val = acc;
        const double snapped = std::round(val);
        if (std::abs(val - snapped) <= 1e-6 && snapped >= 0)
            return static_cast<std::int64_t>(snapped);
    }
    throw NumericalError("invariant-dimension integral failed to snap to an integer");
}

}  // namespace ipt
