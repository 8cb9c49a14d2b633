#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "ipt/coupling.hpp"
#include "ipt/tensor.hpp"

namespace ipt {

// Normalized three-party invariant tensor: amplitudes are 3j symbols,
//   psi[m1,m2,m3] = (j1 j2 j3; m1 m2 m3).
// The invariant subspace of three spins is at most one-dimensional, so this
// is the state whenever it exists.
inline DenseTensor trivalent_ipt(HalfInt j1, HalfInt j2, HalfInt j3) {
    if (!triangle_ok(j1, j2, j3))
        throw EmptySubspaceError("empty invariant subspace: spins (" + j1.str() + "," + j2.str() +
                                 "," + j3.str() + ") violate the triangle or parity constraint");
    DenseTensor psi = DenseTensor::zeros({j1.dim(), j2.dim(), j3.dim()});
    bool any = false;
    for (auto m1 : m_range(j1))
        for (auto m2 : m_range(j2)) {
            const HalfInt m3 = -(m1 + m2);
            if (!m_valid(j3, m3)) continue;
            const double v = wigner3j(j1, j2, j3, m1, m2, m3).to_double();
            if (v != 0) any = true;
            psi.amps[psi.ravel({static_cast<int>(m_index(j1, m1)), static_cast<int>(m_index(j2, m2)),
                                static_cast<int>(m_index(j3, m3))})] = v;
        }
    if (!any)
        throw EmptySubspaceError("empty invariant subspace: all couplings of (" + j1.str() + "," +
                                 j2.str() + "," + j3.str() + ") vanish");
    return psi;
}

// Orthonormal basis of an invariant subspace together with the coupling
// labels that name each vector.
struct CoupledBasis {
    std::vector<HalfInt> spins;
    std::string path;                           // coupling tree: "(12)(34)" or "sequential"
    std::vector<std::vector<HalfInt>> labels;   // intermediate spins per vector
    std::vector<DenseTensor> vectors;

    std::size_t size() const { return vectors.size(); }
};

// Pair coupling (12)(34): for each I in the intersection of the two
// series, the vector
//   v_I[m1 m2 m3 m4] = sum_M (-1)^(I-M)/sqrt(2I+1)
//                      <j1 m1; j2 m2|I M> <j3 m3; j4 m4|I -M>.
inline CoupledBasis coupled_basis4(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4) {
    CoupledBasis basis;
    basis.spins = {j1, j2, j3, j4};
    basis.path = "(12)(34)";

    auto s12 = cg_series(j1, j2);
    auto s34 = cg_series(j3, j4);
    for (auto I : s12) {
        bool in34 = false;
        for (auto x : s34)
            if (x == I) in34 = true;
        if (!in34) continue;

        DenseTensor v = DenseTensor::zeros({j1.dim(), j2.dim(), j3.dim(), j4.dim()});
        const double root = std::sqrt(static_cast<double>(I.dim()));
        for (auto m1 : m_range(j1))
            for (auto m2 : m_range(j2)) {
                const HalfInt M = m1 + m2;
                if (!m_valid(I, M)) continue;
                const double c12 = cgc(j1, m1, j2, m2, I, M).to_double();
                if (c12 == 0) continue;
                // (-1)^(I-M): the exponent is a true integer here
                const double phase = ((I - M).twice() / 2) % 2 == 0 ? 1.0 : -1.0;
                for (auto m3 : m_range(j3)) {
                    const HalfInt m4 = -(M + m3);
                    if (!m_valid(j4, m4)) continue;
                    const double c34 = cgc(j3, m3, j4, m4, I, -M).to_double();
                    if (c34 == 0) continue;
                    v.amps[v.ravel({static_cast<int>(m_index(j1, m1)), static_cast<int>(m_index(j2, m2)),
                                    static_cast<int>(m_index(j3, m3)), static_cast<int>(m_index(j4, m4))})] +=
                        phase / root * c12 * c34;
                }
            }
        basis.labels.push_back({I});
        basis.vectors.push_back(std::move(v));
    }
    return basis;
}

// Four equal spins j combined with coefficients alpha_I over the pair basis,
// I = 0..2j in order. The coefficient vector must be unit within 1e-10.
inline DenseTensor assemble_psi4(HalfInt j, const std::vector<Complex>& alpha) {
    if (j.is_negative()) throw ArgumentError("spin must be nonnegative");
    auto basis = coupled_basis4(j, j, j, j);
    if (alpha.size() != basis.size())
        throw ArgumentError("expected " + std::to_string(basis.size()) + " coefficients, got " +
                            std::to_string(alpha.size()));
    double n2 = 0;
    for (const auto& a : alpha) n2 += std::norm(a);
    if (std::abs(n2 - 1.0) > 1e-10)
        throw ArgumentError("coefficient vector must have unit norm within 1e-10");

    DenseTensor psi = DenseTensor::zeros(basis.vectors.front().dims);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        for (std::size_t i = 0; i < psi.amps.size(); ++i)
            psi.amps[i] += alpha[k] * basis.vectors[k].amps[i];
    }
    return psi;
}

// Sequential coupling basis for 2..6 legs: intermediate labels
// (s_12, s_123, ...) enumerated lexicographically; the last intermediate
// must equal j_n so the final coupling can reach total spin zero.
inline CoupledBasis coupled_basis_n(const std::vector<HalfInt>& spins) {
    const int n = static_cast<int>(spins.size());
    if (n < 2) throw ArgumentError("need at least two spins");
    if (n > 6) throw ArgumentError("sequential basis limited to six spins");
    std::size_t total = 1;
    for (auto j : spins) {
        if (j.is_negative()) throw ArgumentError("spins must be nonnegative");
        total *= static_cast<std::size_t>(j.dim());
        if (total > 10'000'000) throw ResourceError("product dimension exceeds 1e7 amplitudes");
    }

    CoupledBasis basis;
    basis.spins = spins;
    basis.path = "sequential";

    // enumerate label paths depth-first in ascending series order
    std::vector<std::vector<HalfInt>> paths;
    std::vector<HalfInt> cur;
    auto dfs = [&](auto&& self, HalfInt s, int next) -> void {
        if (next == n - 1) {
            // last leg: s (x) j_n contains spin 0 iff s == j_n
            if (s == spins[static_cast<std::size_t>(next)]) paths.push_back(cur);
            return;
        }
        for (auto t : cg_series(s, spins[static_cast<std::size_t>(next)])) {
            cur.push_back(t);
            self(self, t, next + 1);
            cur.pop_back();
        }
    };
    if (n == 2) {
        if (spins[0] == spins[1]) paths.push_back({});
    } else {
        dfs(dfs, spins[0], 1);
    }

    for (const auto& path : paths) {
        // T[prefix index, mu index] for the running coupled spin s
        HalfInt s = spins[0];
        std::size_t pdim = static_cast<std::size_t>(spins[0].dim());
        std::vector<Complex> T(pdim * static_cast<std::size_t>(s.dim()), Complex(0, 0));
        for (std::size_t i = 0; i < pdim; ++i) T[i * static_cast<std::size_t>(s.dim()) + i] = 1.0;

        for (int leg = 1; leg < n - 1; ++leg) {
            const HalfInt jl = spins[static_cast<std::size_t>(leg)];
            const HalfInt snew = path[static_cast<std::size_t>(leg - 1)];
            const std::size_t pnew = pdim * static_cast<std::size_t>(jl.dim());
            std::vector<Complex> Tn(pnew * static_cast<std::size_t>(snew.dim()), Complex(0, 0));
            for (std::size_t pi = 0; pi < pdim; ++pi)
                for (std::size_t om = 0; om < static_cast<std::size_t>(s.dim()); ++om) {
                    const Complex amp = T[pi * static_cast<std::size_t>(s.dim()) + om];
                    if (amp == Complex(0, 0)) continue;
                    const HalfInt mu = HalfInt::from_twice(-s.twice() + 2 * static_cast<int>(om));
                    for (std::size_t il = 0; il < static_cast<std::size_t>(jl.dim()); ++il) {
                        const HalfInt ml = HalfInt::from_twice(-jl.twice() + 2 * static_cast<int>(il));
                        const HalfInt munew = mu + ml;
                        if (!m_valid(snew, munew)) continue;
                        const double c = cgc(s, mu, jl, ml, snew, munew).to_double();
                        if (c == 0) continue;
                        Tn[(pi * static_cast<std::size_t>(jl.dim()) + il) * static_cast<std::size_t>(snew.dim()) +
                           m_index(snew, munew)] += amp * c;
                    }
                }
            T = std::move(Tn);
            pdim = pnew;
            s = snew;
        }

        // close with the last leg: <s mu; j_n m|0 0> = (-1)^(s-mu)/sqrt(2s+1) delta_{m,-mu}
        const HalfInt jn = spins[static_cast<std::size_t>(n - 1)];
        DenseTensor v = DenseTensor::zeros([&] {
            std::vector<int> d;
            for (auto j : spins) d.push_back(j.dim());
            return d;
        }());
        const double root = std::sqrt(static_cast<double>(s.dim()));
        for (std::size_t pi = 0; pi < pdim; ++pi)
            for (std::size_t om = 0; om < static_cast<std::size_t>(s.dim()); ++om) {
                const Complex amp = T[pi * static_cast<std::size_t>(s.dim()) + om];
                if (amp == Complex(0, 0)) continue;
                const HalfInt mu = HalfInt::from_twice(-s.twice() + 2 * static_cast<int>(om));
                const HalfInt mn = -mu;
                if (!m_valid(jn, mn)) continue;
                const double phase = ((s - mu).twice() / 2) % 2 == 0 ? 1.0 : -1.0;
                v.amps[pi * static_cast<std::size_t>(jn.dim()) + m_index(jn, mn)] += amp * phase / root;
            }
        basis.labels.push_back(path);
        basis.vectors.push_back(std::move(v));
    }
    return basis;
}

}  // namespace ipt
