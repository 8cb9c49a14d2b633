#pragma once

#include <cstdint>
#include <thread>
#include <vector>

#include "ipt/basis.hpp"
#include "ipt/nelder_mead.hpp"
#include "ipt/rng.hpp"
#include "ipt/tensor.hpp"

namespace ipt {

struct ScanReport {
    std::vector<HalfInt> spins;
    std::size_t subspace_dim = 0;
    int restarts = 0;
    int iterations = 0;
    std::uint64_t seed = 0;

    double best_deviation = 0;             // min over restarts of max subset deviation
    std::vector<Complex> best_coefficients;  // unit vector over the coupled basis
    PerfectnessReport best_report;
    std::vector<double> restart_minima;  // per restart, in restart order
    long evaluations = 0;
};

namespace detail {

// objective: coefficients x (interleaved re/im over the basis) -> normalized
// state -> worst deviation from maximal mixing over subsets of size <= n/2
struct ScanObjective {
    const CoupledBasis* basis;

    std::vector<Complex> coefficients(const std::vector<double>& x) const {
        std::vector<Complex> c(basis->size());
        double n2 = 0;
        for (std::size_t k = 0; k < c.size(); ++k) {
            c[k] = Complex(x[2 * k], x[2 * k + 1]);
            n2 += std::norm(c[k]);
        }
        if (n2 < 1e-16) return {};  // degenerate point; caller penalizes
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& z : c) z *= inv;
        return c;
    }

    DenseTensor assemble(const std::vector<Complex>& c) const {
        DenseTensor psi = DenseTensor::zeros(basis->vectors.front().dims);
        for (std::size_t k = 0; k < c.size(); ++k)
            for (std::size_t i = 0; i < psi.amps.size(); ++i)
                psi.amps[i] += c[k] * basis->vectors[k].amps[i];
        return psi;
    }

    double operator()(const std::vector<double>& x) const {
        auto c = coefficients(x);
        if (c.empty()) return 1e6;
        return perfectness_report(assemble(c), 1e-10).max_deviation;
    }
};

}  // namespace detail

// Multi-start derivative-free search for the most nearly perfect invariant
// state of five or six spins. The minimum found is evidence, not proof:
// a large value means no perfect tensor was found in this subspace, a
// number near zero would locate a candidate.
inline ScanReport scan56(const std::vector<HalfInt>& spins, int restarts, int iterations,
                         std::uint64_t seed, int threads = 1) {
    const int n = static_cast<int>(spins.size());
    if (n != 5 && n != 6) throw ArgumentError("the scan covers five or six spins");
    if (restarts < 1 || iterations < 1)
        throw ArgumentError("restarts and iterations must be positive");

    const auto basis = coupled_basis_n(spins);
    if (basis.size() == 0) throw EmptySubspaceError("invariant subspace is empty for these spins");
    detail::ScanObjective obj{&basis};

    ScanReport rep;
    rep.spins = spins;
    rep.subspace_dim = basis.size();
    rep.restarts = restarts;
    rep.iterations = iterations;
    rep.seed = seed;
    rep.restart_minima.assign(static_cast<std::size_t>(restarts), 0.0);

    struct Out {
        double fmin = 0;
        std::vector<double> x;
        long evals = 0;
    };
    std::vector<Out> outs(static_cast<std::size_t>(restarts));

    auto run_restart = [&](int r) {
        auto rng = SplitMix64::stream(seed, static_cast<std::uint64_t>(r));
        std::vector<double> x0(2 * basis.size());
        for (auto& v : x0) {
            auto [g1, g2] = rng.normal_pair();
            v = g1;
            (void)g2;
        }
        auto res = nelder_mead(obj, x0, 0.5, iterations);
        outs[static_cast<std::size_t>(r)] = {res.fmin, res.x, res.evaluations};
    };

    if (threads <= 1) {
        for (int r = 0; r < restarts; ++r) run_restart(r);
    } else {
        std::vector<std::thread> pool;
        const int nt = std::min(threads, restarts);
        for (int w = 0; w < nt; ++w)
            pool.emplace_back([&, w] {
                for (int r = w; r < restarts; r += nt) run_restart(r);
            });
        for (auto& th : pool) th.join();
    }

    int best = 0;
    for (int r = 0; r < restarts; ++r) {
        rep.restart_minima[static_cast<std::size_t>(r)] = outs[static_cast<std::size_t>(r)].fmin;
        rep.evaluations += outs[static_cast<std::size_t>(r)].evals;
        if (outs[static_cast<std::size_t>(r)].fmin < outs[static_cast<std::size_t>(best)].fmin) best = r;
    }
    rep.best_deviation = outs[static_cast<std::size_t>(best)].fmin;
    rep.best_coefficients = obj.coefficients(outs[static_cast<std::size_t>(best)].x);
    rep.best_report = perfectness_report(obj.assemble(rep.best_coefficients), 1e-10);
    return rep;
}

}  // namespace ipt
