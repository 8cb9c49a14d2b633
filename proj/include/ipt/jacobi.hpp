#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "ipt/errors.hpp"

namespace ipt {

// Cyclic Jacobi eigenvalue iteration for a real symmetric matrix, row-major.
// Sweeps rotate every off-diagonal pair until the off-diagonal Frobenius
// norm falls below 1e-13 times the Frobenius norm of the input.
inline std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n) {
    if (n < 0) throw ArgumentError("matrix dimension must be nonnegative");
    if (a.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        throw ArgumentError("matrix storage does not match dimension");
    auto at = [&](int i, int j) -> double& {
        return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
    };

    double fro = 0;
    for (double x : a) fro += x * x;
    fro = std::sqrt(fro);
    if (fro == 0 || n <= 1) {
        std::vector<double> vals(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) vals[static_cast<std::size_t>(i)] = at(i, i);
        std::sort(vals.begin(), vals.end());
        return vals;
    }
    const double stop = 1e-13 * fro;

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += 2 * at(p, q) * at(p, q);
        if (std::sqrt(off) <= stop) {
            std::vector<double> vals(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) vals[static_cast<std::size_t>(i)] = at(i, i);
            std::sort(vals.begin(), vals.end());
            return vals;
        }
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0) continue;
                const double app = at(p, p), aqq = at(q, q);
                const double tau = (aqq - app) / (2 * apq);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
                const double c = 1 / std::sqrt(1 + t * t);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
    }
    throw NumericalError("jacobi iteration did not converge");
}

// Eigenvalues of a Hermitian matrix. A real input goes straight to the
// real solver; a complex one is embedded as [[A,-B],[B,A]], whose spectrum
// is that of A+iB doubled, and read back from sorted pairs.
inline std::vector<double> hermitian_eigenvalues(const std::vector<std::complex<double>>& h, int n) {
    if (h.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        throw ArgumentError("matrix storage does not match dimension");
    bool real = true;
    for (const auto& z : h)
        if (z.imag() != 0) {
            real = false;
            break;
        }
    const std::size_t N = static_cast<std::size_t>(n);
    if (real) {
        std::vector<double> a(N * N);
        for (std::size_t i = 0; i < N * N; ++i) a[i] = h[i].real();
        return jacobi_eigenvalues(std::move(a), n);
    }
    std::vector<double> s(4 * N * N);
    const std::size_t n2 = 2 * N;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            const double re = h[i * N + j].real(), im = h[i * N + j].imag();
            s[i * n2 + j] = re;
            s[(i + N) * n2 + (j + N)] = re;
            s[i * n2 + (j + N)] = -im;
            s[(i + N) * n2 + j] = im;
        }
    auto vals = jacobi_eigenvalues(std::move(s), 2 * n);
    std::vector<double> out(N);
    for (std::size_t k = 0; k < N; ++k) out[k] = 0.5 * (vals[2 * k] + vals[2 * k + 1]);
    return out;
}

}  // namespace ipt
