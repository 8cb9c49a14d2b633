#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

#include "ipt/errors.hpp"

namespace ipt {

struct NelderMeadResult {
    std::vector<double> x;
    double fmin = 0;
    long evaluations = 0;
};

// Plain Nelder-Mead with the textbook coefficients (reflect 1, expand 2,
// contract 1/2, shrink 1/2). Runs exactly `iterations` simplex steps;
// deterministic for a fixed starting point.
template <class F>
NelderMeadResult nelder_mead(F&& f, const std::vector<double>& x0, double scale, int iterations) {
    const std::size_t n = x0.size();
    if (n == 0) throw ArgumentError("optimizer needs at least one coordinate");
    NelderMeadResult res;

    std::vector<std::vector<double>> pts(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += scale;
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        fv[i] = f(pts[i]);
        ++res.evaluations;
    }

    std::vector<std::size_t> order(n + 1);
    for (int it = 0; it < iterations; ++it) {
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order[0], worst = order[n], second = order[n - 1];

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k];
        }
        for (std::size_t k = 0; k < n; ++k) centroid[k] /= static_cast<double>(n);

        auto blend = [&](double t) {
            std::vector<double> p(n);
            for (std::size_t k = 0; k < n; ++k) p[k] = centroid[k] + t * (centroid[k] - pts[worst][k]);
            return p;
        };

        auto refl = blend(1.0);
        const double fr = f(refl);
        ++res.evaluations;
        if (fr < fv[best]) {
            auto exp_ = blend(2.0);
            const double fe = f(exp_);
            ++res.evaluations;
            if (fe < fr) {
                pts[worst] = std::move(exp_);
                fv[worst] = fe;
            } else {
                pts[worst] = std::move(refl);
                fv[worst] = fr;
            }
        } else if (fr < fv[second]) {
            pts[worst] = std::move(refl);
            fv[worst] = fr;
        } else {
            auto con = blend(fr < fv[worst] ? 0.5 : -0.5);
            const double fc = f(con);
            ++res.evaluations;
            if (fc < std::min(fr, fv[worst])) {
                pts[worst] = std::move(con);
                fv[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t k = 0; k < n; ++k)
                        pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
                    fv[i] = f(pts[i]);
                    ++res.evaluations;
                }
            }
        }
    }

    std::size_t bi = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (fv[i] < fv[bi]) bi = i;
    res.x = pts[bi];
    res.fmin = fv[bi];
    return res;
}

}  // namespace ipt
