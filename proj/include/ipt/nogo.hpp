#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <thread>
#include <vector>

#include "ipt/basis.hpp"
#include "ipt/nelder_mead.hpp"
#include "ipt/rng.hpp"

namespace ipt {

// Exact coefficients c_J = <j -j; j j|J 0>^2 for J = 0..2j. They are
// strictly positive and sum to one; both facts are verified on the exact
// rationals before returning.
struct ClosureColumn {
    HalfInt j;
    std::vector<Rational> c;  // index J = 0..2j
};

inline ClosureColumn closure_column(HalfInt j) {
    if (j.is_negative()) throw ArgumentError("spin must be nonnegative");
    ClosureColumn col;
    col.j = j;
    Rational total = 0;
    for (int tJ = 0; tJ <= 2 * j.twice(); tJ += 2) {
        const Rational cJ = cgc(j, -j, j, j, HalfInt::from_twice(tJ), HalfInt(0)).square();
        if (!(cJ > 0)) throw InvariantError("closure coefficient must be strictly positive");
        total += cJ;
        col.c.push_back(cJ);
    }
    if (total != 1) throw InvariantError("closure coefficients must sum to one");
    return col;
}

struct PinnedResiduals {
    double r_even;   // |1 - |sum_J (-1)^J omega_J c_J|^2|
    double r_plain;  // |1 - |sum_J omega_J c_J|^2|
};

// Residuals of the two pinned matrix elements for phases omega over the
// closure column. Every omega_J must be unit modulus within 1e-12.
inline PinnedResiduals pinned_residuals(const std::vector<Complex>& omega, const ClosureColumn& col) {
    if (omega.size() != col.c.size())
        throw ArgumentError("expected " + std::to_string(col.c.size()) + " phases");
    Complex se(0, 0), sp(0, 0);
    for (std::size_t J = 0; J < omega.size(); ++J) {
        if (std::abs(std::abs(omega[J]) - 1.0) > 1e-12)
            throw ArgumentError("phase " + std::to_string(J) + " is not unit modulus");
        const double cJ = rational_to_double(col.c[J]);
        sp += omega[J] * cJ;
        se += (J % 2 == 0 ? omega[J] : -omega[J]) * cJ;
    }
    return {std::abs(1.0 - std::norm(se)), std::abs(1.0 - std::norm(sp))};
}

// Deviation of the pair marginal rho_34 from maximal mixing for the state
// with pair-basis coefficients alpha; by the magnitude lemma this is ~0
// exactly when |alpha_J| = sqrt(2J+1)/(2j+1).
inline double lemma2_forward_check(HalfInt j, const std::vector<Complex>& alpha) {
    DenseTensor psi = assemble_psi4(j, alpha);
    return reduced_density(psi, {2, 3}).deviation_from_mixed();
}

struct GapCertificate {
    HalfInt j;
    int restarts = 0;
    int iterations = 0;
    std::uint64_t seed = 0;

    double gap = 0;  // min over all full evaluations of max(dev24, dev23)
    std::vector<double> best_phases;  // t_J, J = 0..2j, gauge t_0 = 0
    double best_dev34 = 0, best_dev24 = 0, best_dev23 = 0;
    double best_r_even = 0, best_r_plain = 0;

    double max_dev34 = 0;     // worst rho_34 deviation seen (must stay ~0)
    double min_pinned = 0;    // min over every evaluated omega of max(r_even, r_plain)
    long full_evaluations = 0;
    long pinned_evaluations = 0;
};

namespace detail {

struct NogoObjective {
    const CoupledBasis* basis;
    const ClosureColumn* col;
    int d;

    struct Eval {
        double f, dev34, dev24, dev23, r_even, r_plain;
    };

    // phases t_J for J = 1..2j (t_0 = 0 by gauge)
    Eval operator()(const std::vector<double>& t) const {
        std::vector<Complex> alpha(basis->size());
        std::vector<Complex> omega(basis->size());
        for (std::size_t J = 0; J < alpha.size(); ++J) {
            const double tj = J == 0 ? 0.0 : t[J - 1];
            omega[J] = Complex(std::cos(tj), std::sin(tj));
            alpha[J] = omega[J] * std::sqrt(static_cast<double>(2 * J + 1)) / static_cast<double>(d);
        }
        DenseTensor psi = DenseTensor::zeros(basis->vectors.front().dims);
        for (std::size_t k = 0; k < basis->size(); ++k)
            for (std::size_t i = 0; i < psi.amps.size(); ++i)
                psi.amps[i] += alpha[k] * basis->vectors[k].amps[i];

        Eval e{};
        e.dev34 = reduced_density(psi, {2, 3}).deviation_from_mixed();
        e.dev24 = reduced_density(psi, {1, 3}).deviation_from_mixed();
        e.dev23 = reduced_density(psi, {1, 2}).deviation_from_mixed();
        e.f = std::max(e.dev24, e.dev23);
        auto pr = pinned_residuals(omega, *col);
        e.r_even = pr.r_even;
        e.r_plain = pr.r_plain;
        return e;
    }
};

}  // namespace detail

// Search over the phase torus for the most nearly perfect state with the
// lemma-mandated magnitudes. A coarse grid on the cheap pinned residuals
// picks starting points; full-marginal Nelder-Mead descent refines them.
// Finding max(dev24, dev23) < 1e-8 anywhere would contradict the no-go
// theorem and raises a numerical error, as does gap <= 1e-9.
inline GapCertificate nogo_gap(HalfInt j, int restarts, int iterations, std::uint64_t seed,
                               int threads = 1) {
    if (j.twice() < 1) throw ArgumentError("spin must be at least 1/2");
    if (j.dim() > 64) throw ResourceError("local dimension capped at 64");
    if (restarts < 1 || iterations < 1) throw ArgumentError("restarts and iterations must be positive");

    const auto basis = coupled_basis4(j, j, j, j);
    const auto col = closure_column(j);
    const int m = j.twice();  // 2j free phases after gauging omega_0 = 1
    detail::NogoObjective obj{&basis, &col, j.dim()};

    GapCertificate cert;
    cert.j = j;
    cert.restarts = restarts;
    cert.iterations = iterations;
    cert.seed = seed;
    cert.min_pinned = 1e300;
    cert.gap = 1e300;

    const double two_pi = 2.0 * 3.14159265358979323846;

    // stage 1: pinned-residual grid (cheap lower-bound surface)
    std::vector<std::pair<double, std::vector<double>>> grid;  // (pinned objective, phases)
    {
        int per_dim = 0;
        switch (m) {
            case 1: per_dim = 720; break;
            case 2: per_dim = 120; break;
            case 3: per_dim = 36; break;
            case 4: per_dim = 16; break;
            case 5: per_dim = 10; break;
            case 6: per_dim = 8; break;
            default: per_dim = 0; break;  // too many dimensions: random starts only
        }
        if (per_dim > 0) {
            std::vector<int> ctr(static_cast<std::size_t>(m), 0);
            while (true) {
                std::vector<double> t(static_cast<std::size_t>(m));
                std::vector<Complex> omega(col.c.size());
                omega[0] = 1.0;
                for (int k = 0; k < m; ++k) {
                    t[static_cast<std::size_t>(k)] = two_pi * ctr[static_cast<std::size_t>(k)] / per_dim;
                    omega[static_cast<std::size_t>(k) + 1] =
                        Complex(std::cos(t[static_cast<std::size_t>(k)]), std::sin(t[static_cast<std::size_t>(k)]));
                }
                auto pr = pinned_residuals(omega, col);
                const double pin = std::max(pr.r_even, pr.r_plain);
                cert.min_pinned = std::min(cert.min_pinned, pin);
                ++cert.pinned_evaluations;
                grid.emplace_back(pin, std::move(t));
                int k = m - 1;
                while (k >= 0 && ++ctr[static_cast<std::size_t>(k)] == per_dim) ctr[static_cast<std::size_t>(k--)] = 0;
                if (k < 0) break;
            }
            std::sort(grid.begin(), grid.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
        }
    }

    // stage 2: Nelder-Mead restarts; half seeded from the most dangerous
    // grid points, the rest from the substream for this restart index
    struct RestartOut {
        double fmin = 1e300;
        std::vector<double> x;
        double max_dev34 = 0, min_pinned = 1e300;
        long evals = 0;
    };
    std::vector<RestartOut> outs(static_cast<std::size_t>(restarts));

    auto run_restart = [&](int r) {
        std::vector<double> x0(static_cast<std::size_t>(m));
        const int from_grid = grid.empty() ? 0 : restarts / 2;
        if (r < from_grid && static_cast<std::size_t>(r) < grid.size()) {
            x0 = grid[static_cast<std::size_t>(r)].second;
        } else {
            auto rng = SplitMix64::stream(seed, static_cast<std::uint64_t>(r));
            for (auto& v : x0) v = two_pi * rng.uniform();
        }
        RestartOut out;
        auto wrapped = [&](const std::vector<double>& t) {
            auto e = obj(t);
            ++out.evals;
            out.max_dev34 = std::max(out.max_dev34, e.dev34);
            out.min_pinned = std::min(out.min_pinned, std::max(e.r_even, e.r_plain));
            if (e.f < out.fmin) {
                out.fmin = e.f;
                out.x = t;
            }
            return e.f;
        };
        nelder_mead(wrapped, x0, 0.4, iterations);
        outs[static_cast<std::size_t>(r)] = std::move(out);
    };

    if (threads <= 1) {
        for (int r = 0; r < restarts; ++r) run_restart(r);
    } else {
        std::vector<std::thread> pool;
        std::size_t nt = static_cast<std::size_t>(std::min(threads, restarts));
        for (std::size_t w = 0; w < nt; ++w)
            pool.emplace_back([&, w]() {
                for (int r = static_cast<int>(w); r < restarts; r += static_cast<int>(nt)) run_restart(r);
            });
        for (auto& th : pool) th.join();
    }

    for (int r = 0; r < restarts; ++r) {
        const auto& out = outs[static_cast<std::size_t>(r)];
        cert.full_evaluations += out.evals;
        cert.max_dev34 = std::max(cert.max_dev34, out.max_dev34);
        cert.min_pinned = std::min(cert.min_pinned, out.min_pinned);
        if (out.fmin < cert.gap) {
            cert.gap = out.fmin;
            cert.best_phases.assign(1, 0.0);
            cert.best_phases.insert(cert.best_phases.end(), out.x.begin(), out.x.end());
        }
    }

    {
        auto e = obj(std::vector<double>(cert.best_phases.begin() + 1, cert.best_phases.end()));
        cert.best_dev34 = e.dev34;
        cert.best_dev24 = e.dev24;
        cert.best_dev23 = e.dev23;
        cert.best_r_even = e.r_even;
        cert.best_r_plain = e.r_plain;
    }

    if (cert.max_dev34 > 1e-10)
        throw NumericalError("pair marginal rho_34 deviated despite lemma magnitudes: construction bug");
    if (cert.gap < 1e-8)
        throw NumericalError("theorem contradiction: optimizer reached max(dev24, dev23) = " +
                             std::to_string(cert.gap));
    return cert;
}

}  // namespace ipt
