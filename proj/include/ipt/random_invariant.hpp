#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "ipt/basis.hpp"
#include "ipt/rng.hpp"

namespace ipt {

// Haar-like random invariant state: complex Gaussian coefficients over the
// given orthonormal basis, normalized. Deterministic per (seed, index);
// coefficients are drawn in label order from the (seed, index) substream.
inline DenseTensor sample_invariant(const CoupledBasis& basis, std::uint64_t seed, std::uint64_t index) {
    if (basis.size() == 0) throw EmptySubspaceError("invariant subspace is empty");
    auto rng = SplitMix64::stream(seed, index);
    std::vector<Complex> c(basis.size());
    double n2 = 0;
    for (auto& z : c) {
        auto [g1, g2] = rng.normal_pair();
        z = Complex(g1, g2);
        n2 += std::norm(z);
    }
    const double inv = 1.0 / std::sqrt(n2);
    DenseTensor psi = DenseTensor::zeros(basis.vectors.front().dims);
    for (std::size_t k = 0; k < basis.size(); ++k)
        for (std::size_t i = 0; i < psi.amps.size(); ++i)
            psi.amps[i] += (c[k] * inv) * basis.vectors[k].amps[i];
    return psi;
}

struct ZStats {
    double z1;  // Tr rho_34^2
    double z0;  // Tr rho_34 (= 1 for a normalized state)
    double s2;  // -ln(z1 / z0^2)
};

inline ZStats z_statistics(const DenseTensor& psi) {
    if (psi.parties() != 4) throw ArgumentError("pair-cut statistics are defined for four parties");
    DensityMatrix rho = reduced_density(psi, {2, 3});
    ZStats z{};
    z.z0 = rho.trace();
    z.z1 = rho.purity();
    z.s2 = -std::log(z.z1 / (z.z0 * z.z0));
    return z;
}

// Closed-form averages over Haar-random invariant four-party states.
// Lambda = sum_I 1/(2I+1) over the pair-coupling labels, D their count:
//   E[Z1]   = 2 Lambda / (D^2 + D)
//   E[Z1^2] = (4 Lambda^2 + 20 sum_I (2I+1)^-2) / (D (D+1) (D+2) (D+3))
// and the entropy proxy S2bar = ln(D^2+D) - ln(2 Lambda).
struct AnalyticAverages {
    std::vector<HalfInt> labels;
    int dim_inv = 0;

    Rational lambda = 0;
    Rational sum_inv_sq = 0;  // sum_I (2I+1)^-2
    Rational z1bar = 0;
    Rational z1sqbar = 0;
    Rational var_z1 = 0;
    Rational z0bar = 1;

    double lambda_d = 0, z1bar_d = 0, z1sqbar_d = 0, var_z1_d = 0;
    double s2bar = 0;
    double max_s2 = 0;  // ln of the smaller bipartition dimension

    // Tail bound Prob(|Z1/Z1bar - 1| >= delta/4) <= 3 pi^2 / (delta Lambda)^2.
    double markov_bound(double delta) const {
        const double pi = 3.14159265358979323846;
        return 3.0 * pi * pi / (delta * delta * lambda_d * lambda_d);
    }
    double p_delta(double delta) const { return 1.0 - markov_bound(delta); }
};

inline AnalyticAverages analytic_averages(const std::vector<HalfInt>& spins) {
    if (spins.size() != 4) throw ArgumentError("analytic averages are defined for four parties");
    auto s12 = cg_series(spins[0], spins[1]);
    auto s34 = cg_series(spins[2], spins[3]);
    AnalyticAverages av;
    for (auto I : s12)
        for (auto K : s34)
            if (I == K) av.labels.push_back(I);
    av.dim_inv = static_cast<int>(av.labels.size());
    if (av.dim_inv == 0) throw EmptySubspaceError("invariant subspace is empty");

    for (auto I : av.labels) {
        av.lambda += Rational(1, I.dim());
        av.sum_inv_sq += Rational(1, static_cast<long long>(I.dim()) * I.dim());
    }
    const long long D = av.dim_inv;
    av.z1bar = 2 * av.lambda / Rational(D * D + D);
    const Rational c4 = Rational(D * (D + 1) * (D + 2) * (D + 3));
    av.z1sqbar = (4 * av.lambda * av.lambda + 20 * av.sum_inv_sq) / c4;
    av.var_z1 = av.z1sqbar - av.z1bar * av.z1bar;

    av.lambda_d = rational_to_double(av.lambda);
    av.z1bar_d = rational_to_double(av.z1bar);
    av.z1sqbar_d = rational_to_double(av.z1sqbar);
    av.var_z1_d = rational_to_double(av.var_z1);
    av.s2bar = std::log(static_cast<double>(D * D + D)) - std::log(2.0 * av.lambda_d);
    const double d12 = static_cast<double>(spins[0].dim()) * spins[1].dim();
    const double d34 = static_cast<double>(spins[2].dim()) * spins[3].dim();
    av.max_s2 = std::log(std::min(d12, d34));
    return av;
}

struct TailEntry {
    double delta = 0;
    double z1_tail_freq = 0;   // empirical Prob(|Z1/Z1bar - 1| >= delta/4)
    double z1_bound = 0;       // Markov bound for that tail
    bool z1_bound_ok = false;  // freq <= bound + 3 binomial SE
    double s2_close_freq = 0;  // empirical Prob(|S2 - S2bar| <= delta)
    double p_delta = 0;
    bool s2_rate_ok = false;   // freq >= P_delta - 3 binomial SE
};

struct SampleStats {
    HalfInt j;
    int n_samples = 0;
    std::uint64_t seed = 0;

    double z1_mean = 0, z1_var = 0, z1_se = 0;
    double z1sq_mean = 0, z1sq_var = 0, z1sq_se = 0;
    double s2_mean = 0, s2_var = 0;
    std::array<double, 5> z1_quartiles{};  // min, q1, median, q3, max
    std::array<double, 5> s2_quartiles{};
    bool variance_defined = false;

    AnalyticAverages analytic;
    std::vector<TailEntry> tails;

    std::vector<double> z1_samples;  // in sample-index order
    std::vector<double> s2_samples;
};

namespace detail {

inline std::array<double, 5> quartiles(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    auto at = [&](double p) {
        const double pos = p * static_cast<double>(n - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, n - 1);
        const double frac = pos - static_cast<double>(lo);
        return v[lo] * (1 - frac) + v[hi] * frac;
    };
    return {v.front(), at(0.25), at(0.5), at(0.75), v.back()};
}

}  // namespace detail

// Draws n independent invariant states of four spin-j parties and compares
// pair-cut purity statistics with the closed forms. Sample i depends only
// on (seed, i), so the run is reproducible at any thread count.
inline SampleStats concentration_experiment(HalfInt j, int n, std::uint64_t seed,
                                            const std::vector<double>& deltas, int threads = 1) {
    if (n < 1) throw ArgumentError("need at least one sample");
    const auto basis = coupled_basis4(j, j, j, j);
    SampleStats st;
    st.j = j;
    st.n_samples = n;
    st.seed = seed;
    st.analytic = analytic_averages({j, j, j, j});
    st.z1_samples.resize(static_cast<std::size_t>(n));
    st.s2_samples.resize(static_cast<std::size_t>(n));

    auto run_range = [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            DenseTensor psi = sample_invariant(basis, seed, static_cast<std::uint64_t>(i));
            ZStats z = z_statistics(psi);
            st.z1_samples[static_cast<std::size_t>(i)] = z.z1;
            st.s2_samples[static_cast<std::size_t>(i)] = z.s2;
        }
    };
    if (threads <= 1) {
        run_range(0, n);
    } else {
        std::vector<std::thread> pool;
        const int nt = std::min(threads, n);
        for (int w = 0; w < nt; ++w) {
            const int lo = static_cast<int>(static_cast<long long>(n) * w / nt);
            const int hi = static_cast<int>(static_cast<long long>(n) * (w + 1) / nt);
            pool.emplace_back(run_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    auto mean_of = [&](const std::vector<double>& v) {
        double s = 0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };
    auto var_of = [&](const std::vector<double>& v, double mu) {
        if (v.size() < 2) return 0.0;
        double s = 0;
        for (double x : v) s += (x - mu) * (x - mu);
        return s / static_cast<double>(v.size() - 1);
    };

    std::vector<double> z1sq(st.z1_samples.size());
    for (std::size_t i = 0; i < z1sq.size(); ++i) z1sq[i] = st.z1_samples[i] * st.z1_samples[i];

    st.z1_mean = mean_of(st.z1_samples);
    st.s2_mean = mean_of(st.s2_samples);
    st.z1sq_mean = mean_of(z1sq);
    st.variance_defined = n >= 2;
    st.z1_var = var_of(st.z1_samples, st.z1_mean);
    st.s2_var = var_of(st.s2_samples, st.s2_mean);
    st.z1sq_var = var_of(z1sq, st.z1sq_mean);
    st.z1_se = std::sqrt(st.z1_var / n);
    st.z1sq_se = std::sqrt(st.z1sq_var / n);
    st.z1_quartiles = detail::quartiles(st.z1_samples);
    st.s2_quartiles = detail::quartiles(st.s2_samples);

    for (double delta : deltas) {
        TailEntry t;
        t.delta = delta;
        int tail = 0, close = 0;
        for (std::size_t i = 0; i < st.z1_samples.size(); ++i) {
            if (std::abs(st.z1_samples[i] / st.analytic.z1bar_d - 1.0) >= delta / 4.0) ++tail;
            if (std::abs(st.s2_samples[i] - st.analytic.s2bar) <= delta) ++close;
        }
        t.z1_tail_freq = static_cast<double>(tail) / n;
        t.z1_bound = st.analytic.markov_bound(delta);
        t.p_delta = st.analytic.p_delta(delta);
        const double se_bound =
            std::sqrt(std::max(std::min(t.z1_bound, 1.0) * (1.0 - std::min(t.z1_bound, 1.0)), 0.0) / n);
        t.z1_bound_ok = t.z1_tail_freq <= t.z1_bound + 3.0 * se_bound;
        t.s2_close_freq = static_cast<double>(close) / n;
        const double pd = std::clamp(t.p_delta, 0.0, 1.0);
        const double se_rate = std::sqrt(pd * (1.0 - pd) / n);
        t.s2_rate_ok = t.s2_close_freq >= t.p_delta - 3.0 * se_rate;
        st.tails.push_back(t);
    }
    return st;
}

}  // namespace ipt
