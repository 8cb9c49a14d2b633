#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "ipt/errors.hpp"
#include "ipt/half_int.hpp"
#include "ipt/jacobi.hpp"

namespace ipt {

using Complex = std::complex<double>;

// Pure state of n parties, amplitudes row-major; for a spin-j leg the
// index along that axis is m + j.
struct DenseTensor {
    std::vector<int> dims;
    std::vector<Complex> amps;

    static DenseTensor zeros(std::vector<int> d) {
        DenseTensor t;
        std::size_t total = 1;
        for (int x : d) {
            if (x < 1) throw ArgumentError("every party dimension must be at least 1");
            total *= static_cast<std::size_t>(x);
        }
        t.dims = std::move(d);
        t.amps.assign(total, Complex(0, 0));
        return t;
    }

    std::size_t size() const { return amps.size(); }
    int parties() const { return static_cast<int>(dims.size()); }

    std::size_t ravel(const std::vector<int>& idx) const {
        if (idx.size() != dims.size()) throw ArgumentError("index rank mismatch");
        std::size_t r = 0;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            if (idx[k] < 0 || idx[k] >= dims[k]) throw ArgumentError("index out of range");
            r = r * static_cast<std::size_t>(dims[k]) + static_cast<std::size_t>(idx[k]);
        }
        return r;
    }

    double norm2() const {
        double s = 0;
        for (const auto& z : amps) s += std::norm(z);
        return s;
    }
    double norm() const { return std::sqrt(norm2()); }
    bool is_normalized(double tol = 1e-12) const { return std::abs(norm() - 1.0) <= tol; }

    DenseTensor& operator+=(const DenseTensor& o) {
        if (dims != o.dims) throw ArgumentError("tensor shape mismatch");
        for (std::size_t i = 0; i < amps.size(); ++i) amps[i] += o.amps[i];
        return *this;
    }
    DenseTensor& operator*=(Complex c) {
        for (auto& z : amps) z *= c;
        return *this;
    }
};

inline Complex inner(const DenseTensor& a, const DenseTensor& b) {
    if (a.dims != b.dims) throw ArgumentError("tensor shape mismatch");
    Complex s(0, 0);
    for (std::size_t i = 0; i < a.amps.size(); ++i) s += std::conj(a.amps[i]) * b.amps[i];
    return s;
}

// Hermitian matrix with its trace kept as computed (never renormalized).
struct DensityMatrix {
    int dim = 0;
    std::vector<Complex> a;  // row-major dim x dim

    Complex& at(int i, int j) { return a[static_cast<std::size_t>(i) * dim + j]; }
    const Complex& at(int i, int j) const { return a[static_cast<std::size_t>(i) * dim + j]; }

    double trace() const {
        double t = 0;
        for (int i = 0; i < dim; ++i) t += at(i, i).real();
        return t;
    }

    double purity() const {  // Tr rho^2 for a Hermitian matrix
        double s = 0;
        for (const auto& z : a) s += std::norm(z);
        return s;
    }

    // max_{ij} |rho_ij - conj(rho_ji)|
    double hermiticity_defect() const {
        double worst = 0;
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j)
                worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
        return worst;
    }

    void require_hermitian(double tol = 1e-12) const {
        if (hermiticity_defect() > tol) throw InvariantError("density matrix is not Hermitian");
    }

    // Frobenius distance from the maximally mixed matrix I/dim.
    double deviation_from_mixed() const {
        double s = 0;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                Complex d = at(i, j);
                if (i == j) d -= 1.0 / dim;
                s += std::norm(d);
            }
        return std::sqrt(s);
    }
};

// Partial trace onto the parties in `keep` (0-based, strictly increasing).
// The result trace equals the squared norm of the input; nothing is
// renormalized here.
inline DensityMatrix reduced_density(const DenseTensor& psi, const std::vector<int>& keep) {
    const int n = psi.parties();
    if (keep.empty() || static_cast<int>(keep.size()) >= n)
        throw ArgumentError("kept subset must be a nonempty proper subset of the parties");
    for (std::size_t k = 0; k < keep.size(); ++k) {
        if (keep[k] < 0 || keep[k] >= n) throw ArgumentError("kept party index out of range");
        if (k > 0 && keep[k] <= keep[k - 1]) throw ArgumentError("kept parties must be strictly increasing");
    }

    std::vector<int> comp;
    for (int i = 0; i < n; ++i)
        if (!std::binary_search(keep.begin(), keep.end(), i)) comp.push_back(i);

    std::size_t dk = 1, dc = 1;
    for (int i : keep) dk *= static_cast<std::size_t>(psi.dims[static_cast<std::size_t>(i)]);
    for (int i : comp) dc *= static_cast<std::size_t>(psi.dims[static_cast<std::size_t>(i)]);

    // gather psi into A[keep-index, comp-index]
    std::vector<Complex> A(dk * dc);
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    for (std::size_t flat = 0; flat < psi.size(); ++flat) {
        std::size_t rk = 0, rc = 0;
        for (int i : keep) rk = rk * static_cast<std::size_t>(psi.dims[static_cast<std::size_t>(i)]) + static_cast<std::size_t>(idx[static_cast<std::size_t>(i)]);
        for (int i : comp) rc = rc * static_cast<std::size_t>(psi.dims[static_cast<std::size_t>(i)]) + static_cast<std::size_t>(idx[static_cast<std::size_t>(i)]);
        A[rk * dc + rc] = psi.amps[flat];
        for (int k = n - 1; k >= 0; --k) {
            if (++idx[static_cast<std::size_t>(k)] < psi.dims[static_cast<std::size_t>(k)]) break;
            idx[static_cast<std::size_t>(k)] = 0;
        }
    }

    DensityMatrix rho;
    rho.dim = static_cast<int>(dk);
    rho.a.assign(dk * dk, Complex(0, 0));
    for (std::size_t p = 0; p < dk; ++p)
        for (std::size_t q = p; q < dk; ++q) {
            Complex s(0, 0);
            const Complex* rowp = &A[p * dc];
            const Complex* rowq = &A[q * dc];
            for (std::size_t c = 0; c < dc; ++c) s += rowp[c] * std::conj(rowq[c]);
            rho.a[p * dk + q] = s;
            rho.a[q * dk + p] = std::conj(s);
        }
    return rho;
}

struct Entropies {
    double renyi2;
    double von_neumann;
};

// S2 = -ln(Tr rho^2 / (Tr rho)^2); von Neumann from Jacobi eigenvalues with
// negatives clamped at -1e-9 tolerance and values below 1e-12 dropped.
inline Entropies entropies(const DensityMatrix& rho) {
    if (rho.dim > 500) throw ResourceError("entropies limited to dimension 500");
    rho.require_hermitian(1e-12);
    const double tr = rho.trace();
    if (std::abs(tr - 1.0) > 1e-9) throw InvariantError("density matrix trace is not 1");

    const double p = rho.purity();
    Entropies e{};
    e.renyi2 = -std::log(p / (tr * tr));

    auto vals = hermitian_eigenvalues(rho.a, rho.dim);
    double svn = 0;
    for (double lam : vals) {
        if (lam < -1e-9) throw InvariantError("density matrix has a significantly negative eigenvalue");
        if (lam < 1e-12) continue;
        const double l = std::min(lam, 1.0);
        svn -= l * std::log(l);
    }
    e.von_neumann = svn;
    return e;
}

namespace detail {

// Applies the total ladder operator (raise = J+ or lower = J-) to psi,
// using exact spin-j matrix elements evaluated in binary64.
inline DenseTensor apply_total_ladder(const DenseTensor& psi, bool raise) {
    DenseTensor out = DenseTensor::zeros(psi.dims);
    const int n = psi.parties();
    std::vector<std::size_t> stride(static_cast<std::size_t>(n), 1);
    for (int k = n - 2; k >= 0; --k)
        stride[static_cast<std::size_t>(k)] =
            stride[static_cast<std::size_t>(k + 1)] * static_cast<std::size_t>(psi.dims[static_cast<std::size_t>(k + 1)]);

    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    for (std::size_t flat = 0; flat < psi.size(); ++flat) {
        const Complex amp = psi.amps[flat];
        if (amp != Complex(0, 0)) {
            for (int leg = 0; leg < n; ++leg) {
                const int d = psi.dims[static_cast<std::size_t>(leg)];
                const double j = 0.5 * (d - 1);
                const double m = -j + idx[static_cast<std::size_t>(leg)];
                if (raise) {
                    if (idx[static_cast<std::size_t>(leg)] + 1 < d)
                        out.amps[flat + stride[static_cast<std::size_t>(leg)]] +=
                            amp * std::sqrt(j * (j + 1) - m * (m + 1));
                } else {
                    if (idx[static_cast<std::size_t>(leg)] > 0)
                        out.amps[flat - stride[static_cast<std::size_t>(leg)]] +=
                            amp * std::sqrt(j * (j + 1) - m * (m - 1));
                }
            }
        }
        for (int k = n - 1; k >= 0; --k) {
            if (++idx[static_cast<std::size_t>(k)] < psi.dims[static_cast<std::size_t>(k)]) break;
            idx[static_cast<std::size_t>(k)] = 0;
        }
    }
    return out;
}

}  // namespace detail

// max over a in {x,y,z} of || (sum_i J_i^a) psi ||, the norm residual of
// total-spin invariance. Per-party spins are read off the dimensions.
inline double invariance_residual(const DenseTensor& psi) {
    const DenseTensor up = detail::apply_total_ladder(psi, true);
    const DenseTensor dn = detail::apply_total_ladder(psi, false);

    double nx2 = 0, ny2 = 0, nz2 = 0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        nx2 += std::norm(0.5 * (up.amps[i] + dn.amps[i]));
        ny2 += std::norm(0.5 * (up.amps[i] - dn.amps[i]));  // |J_y psi| = |(J+ - J-) psi| / 2
    }
    // J_z is diagonal: multiply each amplitude by the total magnetic number
    const int n = psi.parties();
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    for (std::size_t flat = 0; flat < psi.size(); ++flat) {
        double mtot = 0;
        for (int k = 0; k < n; ++k)
            mtot += -0.5 * (psi.dims[static_cast<std::size_t>(k)] - 1) + idx[static_cast<std::size_t>(k)];
        nz2 += std::norm(psi.amps[flat]) * mtot * mtot;
        for (int k = n - 1; k >= 0; --k) {
            if (++idx[static_cast<std::size_t>(k)] < psi.dims[static_cast<std::size_t>(k)]) break;
            idx[static_cast<std::size_t>(k)] = 0;
        }
    }
    return std::sqrt(std::max({nx2, ny2, nz2}));
}

struct MarginalRecord {
    std::vector<int> parties;  // 1-based, ascending
    int dim = 0;               // marginal dimension D
    double deviation = 0;      // ||rho - I/D||_F
    double trace = 0;
    double renyi2 = 0;
    double von_neumann = 0;
};

struct PerfectnessReport {
    double tol = 0;
    double max_deviation = 0;
    bool perfect = false;
    std::vector<MarginalRecord> records;
};

// Checks every subset of 1 <= k <= floor(n/2) parties against the
// maximally mixed marginal. Input must be normalized.
inline PerfectnessReport perfectness_report(const DenseTensor& psi, double tol = 1e-10) {
    const int n = psi.parties();
    if (n < 2) throw ArgumentError("perfectness needs at least two parties");
    if (!psi.is_normalized(1e-12)) throw ArgumentError("input state must be normalized");

    PerfectnessReport rep;
    rep.tol = tol;

    for (int k = 1; k <= n / 2; ++k) {
        std::vector<int> subset(static_cast<std::size_t>(k));
        std::iota(subset.begin(), subset.end(), 0);
        while (true) {
            DensityMatrix rho = reduced_density(psi, subset);
            MarginalRecord rec;
            for (int i : subset) rec.parties.push_back(i + 1);
            rec.dim = rho.dim;
            rec.deviation = rho.deviation_from_mixed();
            rec.trace = rho.trace();
            auto e = entropies(rho);
            rec.renyi2 = e.renyi2;
            rec.von_neumann = e.von_neumann;
            rep.max_deviation = std::max(rep.max_deviation, rec.deviation);
            rep.records.push_back(std::move(rec));

            // next combination
            int i = k - 1;
            while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - k + i) --i;
            if (i < 0) break;
            ++subset[static_cast<std::size_t>(i)];
            for (int t = i + 1; t < k; ++t)
                subset[static_cast<std::size_t>(t)] = subset[static_cast<std::size_t>(t - 1)] + 1;
        }
    }
    rep.perfect = rep.max_deviation <= tol;
    return rep;
}

}  // namespace ipt
