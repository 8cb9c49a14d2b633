#pragma once

#include <cmath>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ipt/errors.hpp"

namespace ipt {

struct QuadRule {
    std::vector<double> nodes;    // on (-1, 1), ascending
    std::vector<double> weights;  // sum to 2
};

// Gauss-Legendre rule of order n: Newton iteration on P_n with the usual
// Chebyshev-like initial guesses. Exact for polynomials up to degree 2n-1.
inline const QuadRule& gauss_legendre(int n) {
    if (n < 1) throw ArgumentError("quadrature order must be positive");
    thread_local std::unordered_map<int, QuadRule> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    QuadRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const double pi = std::acos(-1.0);
    for (int k = 0; k < (n + 1) / 2; ++k) {
        double x = std::cos(pi * (k + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            // evaluate P_n and P_n' by upward recurrence
            double p0 = 1.0, p1 = x;
            for (int m = 2; m <= n; ++m) {
                double p2 = ((2 * m - 1) * x * p1 - (m - 1) * p0) / m;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(n - 1 - k)] = x;
        rule.weights[static_cast<std::size_t>(n - 1 - k)] = w;
        rule.nodes[static_cast<std::size_t>(k)] = -x;
        rule.weights[static_cast<std::size_t>(k)] = w;
    }
    if (n % 2 == 1) {
        rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
        // recompute the center weight directly
        double p0 = 1.0, p1 = 0.0;
        for (int m = 2; m <= n; ++m) {
            double p2 = (-(m - 1) * p0) / m;
            p0 = p1;
            p1 = p2;
        }
        // P_n'(0) = n * P_{n-1}(0) for odd n
        double dp = n * p0;
        rule.weights[static_cast<std::size_t>(n / 2)] = 2.0 / (dp * dp);
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

}  // namespace ipt
