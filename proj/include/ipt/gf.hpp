#pragma once

#include <string>
#include <vector>

#include "ipt/errors.hpp"

namespace ipt {

// Finite field GF(p^k). Elements are encoded as integers in [0, q):
// the base-p digits of the encoding are the coefficients of a polynomial
// of degree < k, least significant digit = constant term. Arithmetic is
// polynomial arithmetic mod p and mod a fixed monic irreducible modulus,
// so a given q always yields bit-identical results.
class GF {
public:
    // modulus: monic, degree k, coefficients ascending (constant first).
    GF(int p, int k, std::vector<int> modulus)
        : p_(p), k_(k), q_(1), mod_(std::move(modulus)) {
        if (p_ < 2 || !is_prime(p_)) throw ArgumentError("field characteristic must be prime");
        if (k_ < 1) throw ArgumentError("field degree must be positive");
        for (int i = 0; i < k_; ++i) {
            if (q_ > 100'000'000 / p_) throw ResourceError("field order too large");
            q_ *= p_;
        }
        if (static_cast<int>(mod_.size()) != k_ + 1 || mod_[static_cast<std::size_t>(k_)] != 1)
            throw ArgumentError("modulus must be monic of degree k");
        for (int c : mod_)
            if (c < 0 || c >= p_) throw ArgumentError("modulus coefficients must be reduced mod p");
        if (k_ > 1 && !irreducible())
            throw ArgumentError("modulus polynomial is reducible over GF(" + std::to_string(p_) + ")");
    }

    int p() const { return p_; }
    int k() const { return k_; }
    int q() const { return q_; }
    const std::vector<int>& modulus() const { return mod_; }

    bool valid(int a) const { return a >= 0 && a < q_; }

    int add(int a, int b) const {
        check(a), check(b);
        int out = 0, w = 1;
        for (int i = 0; i < k_; ++i) {
            out += ((a % p_ + b % p_) % p_) * w;
            a /= p_;
            b /= p_;
            w *= p_;
        }
        return out;
    }

    int neg(int a) const {
        check(a);
        int out = 0, w = 1;
        for (int i = 0; i < k_; ++i) {
            out += ((p_ - a % p_) % p_) * w;
            a /= p_;
            w *= p_;
        }
        return out;
    }

    int sub(int a, int b) const { return add(a, neg(b)); }

    int mul(int a, int b) const {
        check(a), check(b);
        // schoolbook product of the digit polynomials, then reduce
        std::vector<int> prod(static_cast<std::size_t>(2 * k_ - 1), 0);
        std::vector<int> da = digits(a), db = digits(b);
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < k_; ++j)
                prod[static_cast<std::size_t>(i + j)] =
                    (prod[static_cast<std::size_t>(i + j)] + da[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(j)]) % p_;
        reduce(prod);
        return encode(prod);
    }

    int inv(int a) const {
        check(a);
        if (a == 0) throw ArgumentError("zero has no multiplicative inverse");
        // q is small by construction; a linear scan is exact and simple
        for (int b = 1; b < q_; ++b)
            if (mul(a, b) == 1) return b;
        throw InvariantError("no inverse found: modulus is not irreducible");
    }

    std::string str(int a) const {
        check(a);
        return std::to_string(a);
    }

    static bool is_prime(int n) {
        if (n < 2) return false;
        for (int d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    void check(int a) const {
        if (!valid(a))
            throw ArgumentError("element " + std::to_string(a) + " outside field of order " +
                                std::to_string(q_));
    }

    std::vector<int> digits(int a) const {
        std::vector<int> d(static_cast<std::size_t>(k_), 0);
        for (int i = 0; i < k_; ++i) {
            d[static_cast<std::size_t>(i)] = a % p_;
            a /= p_;
        }
        return d;
    }

    int encode(const std::vector<int>& d) const {
        int out = 0;
        for (int i = k_ - 1; i >= 0; --i) out = out * p_ + d[static_cast<std::size_t>(i)];
        return out;
    }

    // divide by the monic modulus in place; keep the degree-<k remainder
    void reduce(std::vector<int>& poly) const {
        for (int deg = static_cast<int>(poly.size()) - 1; deg >= k_; --deg) {
            const int lead = poly[static_cast<std::size_t>(deg)];
            if (lead == 0) continue;
            for (int i = 0; i <= k_; ++i) {
                auto& c = poly[static_cast<std::size_t>(deg - k_ + i)];
                c = ((c - lead * mod_[static_cast<std::size_t>(i)]) % p_ + p_) % p_;
            }
        }
        poly.resize(static_cast<std::size_t>(k_));
    }

    // trial division by every monic polynomial of degree 1..k/2
    bool irreducible() const {
        std::vector<int> trial;
        for (int deg = 1; 2 * deg <= k_; ++deg) {
            long long count = 1;
            for (int i = 0; i < deg; ++i) count *= p_;  // free coefficients below the monic lead
            for (long long code = 0; code < count; ++code) {
                trial.assign(static_cast<std::size_t>(deg) + 1, 0);
                long long c = code;
                for (int i = 0; i < deg; ++i) {
                    trial[static_cast<std::size_t>(i)] = static_cast<int>(c % p_);
                    c /= p_;
                }
                trial[static_cast<std::size_t>(deg)] = 1;
                if (divides(trial)) return false;
            }
        }
        return true;
    }

    bool divides(const std::vector<int>& divisor) const {
        std::vector<int> rem = mod_;
        const int dd = static_cast<int>(divisor.size()) - 1;
        for (int deg = static_cast<int>(rem.size()) - 1; deg >= dd; --deg) {
            const int lead = rem[static_cast<std::size_t>(deg)];
            if (lead == 0) continue;
            for (int i = 0; i <= dd; ++i) {
                auto& c = rem[static_cast<std::size_t>(deg - dd + i)];
                c = ((c - lead * divisor[static_cast<std::size_t>(i)]) % p_ + p_) % p_;
            }
        }
        for (int c : rem)
            if (c != 0) return false;
        return true;
    }

    int p_, k_, q_;
    std::vector<int> mod_;
};

namespace detail {

// Frozen irreducible moduli for the built-in extension fields, ascending
// coefficients (constant term first, leading 1 last). Fixed forever so
// constructed states are reproducible bit for bit.
inline const std::vector<int>* builtin_modulus(int q) {
    static const struct {
        int q;
        std::vector<int> mod;
    } table[] = {
        {4, {1, 1, 1}},            // x^2 + x + 1
        {8, {1, 1, 0, 1}},         // x^3 + x + 1
        {9, {2, 2, 1}},            // x^2 + 2x + 2
        {16, {1, 1, 0, 0, 1}},     // x^4 + x + 1
        {25, {2, 4, 1}},           // x^2 + 4x + 2
        {27, {1, 2, 0, 1}},        // x^3 + 2x + 1
        {32, {1, 0, 1, 0, 0, 1}},  // x^5 + x^2 + 1
        {49, {3, 6, 1}},           // x^2 + 6x + 3
        {64, {1, 1, 0, 0, 0, 0, 1}},  // x^6 + x + 1
    };
    for (const auto& row : table)
        if (row.q == q) return &row.mod;
    return nullptr;
}

}  // namespace detail

// Factor q as p^k and build the field. Prime q uses the degree-1 modulus x;
// prime powers up to 64 use the frozen built-in modulus table; larger
// extension fields need an explicit modulus.
inline GF gf_field(int q, const std::vector<int>& user_modulus = {}) {
    if (q < 2) throw ArgumentError("field order must be at least 2");
    int p = 0;
    for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    if (p == 0) p = q;  // q itself is prime
    int k = 0, rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++k;
    }
    if (rest != 1)
        throw ArgumentError("field order " + std::to_string(q) + " is not a prime power");

    if (!user_modulus.empty()) return GF(p, k, user_modulus);
    if (k == 1) return GF(p, 1, {0, 1});  // modulus x: the prime field itself
    const auto* mod = detail::builtin_modulus(q);
    if (!mod)
        throw UnsupportedError("no built-in modulus for GF(" + std::to_string(q) +
                               "); supply an irreducible modulus explicitly");
    return GF(p, k, *mod);
}

}  // namespace ipt
