#pragma once

#include <string>
#include <vector>

#include "ipt/gf.hpp"
#include "ipt/latin.hpp"
#include "ipt/tensor.hpp"

namespace ipt {

namespace detail {

inline void check_state_size(long long d) {
    const long long amps = d * d * d * d;
    if (amps > 10'000'000)
        throw ResourceError("four parties of dimension " + std::to_string(d) +
                            " exceed the 1e7 amplitude cap");
}

}  // namespace detail

// Four-party state from the [[1,0,1,1],[0,1,1,alpha]] generator over GF(q):
//   |psi> = 1/q * sum_{u1,u2} |u1>|u2>|u1+u2>|u1+alpha*u2>.
// Every 2x2 minor of the generator is a unit exactly when alpha is neither
// 0 nor 1, which is what makes all two-party marginals maximally mixed.
inline DenseTensor mds_state(const GF& field, int alpha) {
    const int q = field.q();
    if (q < 3)
        throw ArgumentError("no valid mixing element exists over GF(2): the field has only 0 and 1, "
                            "and a four-party perfect tensor of dimension 2 does not exist");
    if (!field.valid(alpha)) throw ArgumentError("alpha is not an element of GF(" + std::to_string(q) + ")");
    if (alpha == 0 || alpha == 1)
        throw ArgumentError("alpha must differ from 0 and 1, otherwise the generator loses full "
                            "minor rank");
    detail::check_state_size(q);

    DenseTensor psi = DenseTensor::zeros({q, q, q, q});
    const double amp = 1.0 / static_cast<double>(q);
    for (int u1 = 0; u1 < q; ++u1)
        for (int u2 = 0; u2 < q; ++u2) {
            const int c3 = field.add(u1, u2);
            const int c4 = field.add(u1, field.mul(alpha, u2));
            psi.amps[psi.ravel({u1, u2, c3, c4})] = amp;
        }
    return psi;
}

inline DenseTensor mds_state(int q, int alpha) { return mds_state(gf_field(q), alpha); }

// Party-wise tensor product of two four-party states: party i of the output
// carries the index pair (a_i, b_i) encoded as a_i * d2 + b_i. Maximal
// mixedness of every marginal is preserved, so perfect inputs give a
// perfect output of dimension d1*d2.
inline DenseTensor compose_product(const DenseTensor& s1, const DenseTensor& s2) {
    if (s1.parties() != 4 || s2.parties() != 4)
        throw ArgumentError("party-wise composition is defined for four-party states");
    std::vector<int> dims(4);
    for (int i = 0; i < 4; ++i) dims[static_cast<std::size_t>(i)] =
        s1.dims[static_cast<std::size_t>(i)] * s2.dims[static_cast<std::size_t>(i)];
    const long long total = static_cast<long long>(dims[0]) * dims[1] * dims[2] * dims[3];
    if (total > 10'000'000) throw ResourceError("composed state exceeds the 1e7 amplitude cap");

    DenseTensor out = DenseTensor::zeros(dims);
    std::vector<int> ia(4), ib(4), io(4);
    for (std::size_t fa = 0; fa < s1.size(); ++fa) {
        if (s1.amps[fa] == Complex(0, 0)) continue;
        std::size_t ra = fa;
        for (int i = 3; i >= 0; --i) {
            ia[static_cast<std::size_t>(i)] = static_cast<int>(ra % static_cast<std::size_t>(s1.dims[static_cast<std::size_t>(i)]));
            ra /= static_cast<std::size_t>(s1.dims[static_cast<std::size_t>(i)]);
        }
        for (std::size_t fb = 0; fb < s2.size(); ++fb) {
            if (s2.amps[fb] == Complex(0, 0)) continue;
            std::size_t rb = fb;
            for (int i = 3; i >= 0; --i) {
                ib[static_cast<std::size_t>(i)] = static_cast<int>(rb % static_cast<std::size_t>(s2.dims[static_cast<std::size_t>(i)]));
                rb /= static_cast<std::size_t>(s2.dims[static_cast<std::size_t>(i)]);
            }
            for (int i = 0; i < 4; ++i)
                io[static_cast<std::size_t>(i)] =
                    ia[static_cast<std::size_t>(i)] * s2.dims[static_cast<std::size_t>(i)] + ib[static_cast<std::size_t>(i)];
            out.amps[out.ravel(io)] = s1.amps[fa] * s2.amps[fb];
        }
    }
    return out;
}

// Four-party state from a mutually orthogonal pair of Latin squares:
//   |psi> = 1/d * sum_{i,j} |i>|j>|L1(i,j)>|L2(i,j)>.
inline DenseTensor mols_state(const LatinSquare& l1, const LatinSquare& l2) {
    l1.validate();
    l2.validate();
    if (l1.order != l2.order) throw ArgumentError("latin squares must have equal orders");
    if (!mutually_orthogonal(l1, l2))
        throw OrthogonalityError("the two latin squares are not mutually orthogonal: some symbol "
                                 "pair repeats");
    const int d = l1.order;
    detail::check_state_size(d);
    DenseTensor psi = DenseTensor::zeros({d, d, d, d});
    const double amp = 1.0 / static_cast<double>(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) psi.amps[psi.ravel({i, j, l1.at(i, j), l2.at(i, j)})] = amp;
    return psi;
}

// Dispatcher over local dimension d:
//   - prime power d >= 3: generator construction with the canonical alpha = 2
//     (the smallest field element beyond 0 and 1);
//   - composite d with every coprime prime-power factor >= 3 (d odd, or
//     divisible by 4): party-wise product of the factors' states;
//   - d = 2 and d = 6: refused (see the diagnostics);
//   - other d = 2 mod 4: needs an explicitly supplied orthogonal pair of
//     Latin squares; use mols_state directly.
inline DenseTensor ame_state(int d) {
    if (d < 2) throw ArgumentError("local dimension must be at least 2");
    if (d == 2)
        throw ArgumentError("a four-party perfect tensor of local dimension 2 does not exist; "
                            "no construction is possible");
    if (d == 6)
        throw ArgumentError(
            "local dimension 6 is refused: 6 = 2*3 has a bare factor of two, no orthogonal pair "
            "of order-6 latin squares exists, and whether a four-party perfect tensor of "
            "dimension 6 exists at all is an open problem; no construction is attempted");
    detail::check_state_size(d);

    // split d into its coprime prime-power factors
    std::vector<int> factors;
    int rest = d;
    for (int pr = 2; pr * pr <= rest; ++pr) {
        if (rest % pr != 0) continue;
        int pk = 1;
        while (rest % pr == 0) {
            pk *= pr;
            rest /= pr;
        }
        factors.push_back(pk);
    }
    if (rest > 1) factors.push_back(rest);

    if (d % 4 == 2)
        throw UnsupportedError(
            "local dimension " + std::to_string(d) +
            " = 2 mod 4 has a bare factor of two; the generator and product routes do not apply. "
            "Supply an orthogonal pair of order-" + std::to_string(d) + " latin squares instead");

    DenseTensor out = mds_state(factors[0], 2);
    for (std::size_t i = 1; i < factors.size(); ++i)
        out = compose_product(out, mds_state(factors[static_cast<std::size_t>(i)], 2));
    return out;
}

}  // namespace ipt
