#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "ipt/tensor.hpp"

using Catch::Approx;
using ipt::ArgumentError;
using ipt::Complex;
using ipt::DenseTensor;
using ipt::DensityMatrix;
using ipt::InvariantError;

namespace {

DenseTensor bell_pair() {
    DenseTensor t = DenseTensor::zeros({2, 2});
    const double r = 1.0 / std::sqrt(2.0);
    t.amps[t.ravel({0, 0})] = r;
    t.amps[t.ravel({1, 1})] = r;
    return t;
}

DenseTensor singlet() {
    DenseTensor t = DenseTensor::zeros({2, 2});
    const double r = 1.0 / std::sqrt(2.0);
    t.amps[t.ravel({0, 1})] = r;
    t.amps[t.ravel({1, 0})] = -r;
    return t;
}

DenseTensor ghz(int parties) {
    std::vector<int> dims(static_cast<std::size_t>(parties), 2);
    DenseTensor t = DenseTensor::zeros(dims);
    const double r = 1.0 / std::sqrt(2.0);
    t.amps.front() = r;
    t.amps.back() = r;
    return t;
}

}  // namespace

TEST_CASE("dense tensor basics") {
    auto t = DenseTensor::zeros({2, 3, 4});
    CHECK(t.size() == 24);
    CHECK(t.parties() == 3);
    CHECK(t.ravel({1, 2, 3}) == 23);
    CHECK(t.norm() == 0.0);
    CHECK_FALSE(t.is_normalized());
    CHECK_THROWS_AS(t.ravel({1, 2}), ArgumentError);
    CHECK_THROWS_AS(t.ravel({1, 2, 4}), ArgumentError);
    CHECK_THROWS_AS(DenseTensor::zeros({2, 0}), ArgumentError);
    CHECK(bell_pair().is_normalized());
}

TEST_CASE("reduced density of the bell pair is maximally mixed") {
    auto rho = ipt::reduced_density(bell_pair(), {0});
    REQUIRE(rho.dim == 2);
    CHECK(rho.at(0, 0).real() == Approx(0.5));
    CHECK(rho.at(1, 1).real() == Approx(0.5));
    CHECK(std::abs(rho.at(0, 1)) < 1e-15);
    CHECK(rho.trace() == Approx(1.0));
    CHECK(rho.deviation_from_mixed() < 1e-15);
    CHECK(rho.hermiticity_defect() == 0.0);
}

TEST_CASE("reduced density keeps the squared norm as trace") {
    auto t = bell_pair();
    for (auto& z : t.amps) z *= 2.0;  // norm 2, trace should be 4
    auto rho = ipt::reduced_density(t, {1});
    CHECK(rho.trace() == Approx(4.0));
}

TEST_CASE("reduced density argument checks") {
    auto t = bell_pair();
    CHECK_THROWS_AS(ipt::reduced_density(t, {}), ArgumentError);
    CHECK_THROWS_AS(ipt::reduced_density(t, {0, 1}), ArgumentError);
    CHECK_THROWS_AS(ipt::reduced_density(t, {2}), ArgumentError);
    CHECK_THROWS_AS(ipt::reduced_density(t, {-1}), ArgumentError);
}

TEST_CASE("purity of complementary cuts agrees for pure states") {
    // random-ish three-party state with fixed amplitudes
    DenseTensor t = DenseTensor::zeros({2, 3, 2});
    for (std::size_t i = 0; i < t.size(); ++i)
        t.amps[i] = Complex(std::sin(1.0 + 0.7 * static_cast<double>(i)),
                            std::cos(2.0 - 0.3 * static_cast<double>(i)));
    const double nrm = t.norm();
    for (auto& z : t.amps) z /= nrm;
    auto ra = ipt::reduced_density(t, {0});
    auto rb = ipt::reduced_density(t, {1, 2});
    CHECK(ra.purity() == Approx(rb.purity()).epsilon(1e-12));
}

TEST_CASE("entropies of simple states") {
    auto rho_mixed = ipt::reduced_density(bell_pair(), {0});
    auto e = ipt::entropies(rho_mixed);
    CHECK(e.renyi2 == Approx(std::log(2.0)));
    CHECK(e.von_neumann == Approx(std::log(2.0)));

    DenseTensor prod = DenseTensor::zeros({2, 2});
    prod.amps[prod.ravel({0, 0})] = 1.0;
    auto e2 = ipt::entropies(ipt::reduced_density(prod, {0}));
    CHECK(e2.renyi2 == Approx(0.0).margin(1e-12));
    CHECK(e2.von_neumann == Approx(0.0).margin(1e-12));

    // von Neumann never falls below Renyi-2
    DenseTensor skew = DenseTensor::zeros({2, 2});
    skew.amps[skew.ravel({0, 0})] = std::sqrt(0.9);
    skew.amps[skew.ravel({1, 1})] = std::sqrt(0.1);
    auto e3 = ipt::entropies(ipt::reduced_density(skew, {0}));
    CHECK(e3.von_neumann >= e3.renyi2 - 1e-9);
    CHECK(e3.renyi2 == Approx(-std::log(0.81 + 0.01)));
}

TEST_CASE("entropies reject bad density matrices") {
    DensityMatrix bad;
    bad.dim = 2;
    bad.a = {Complex(0.5, 0), Complex(0.1, 0), Complex(0.3, 0), Complex(0.5, 0)};
    CHECK_THROWS_AS(ipt::entropies(bad), InvariantError);

    DensityMatrix off_trace;
    off_trace.dim = 2;
    off_trace.a = {Complex(0.9, 0), Complex(0, 0), Complex(0, 0), Complex(0.9, 0)};
    CHECK_THROWS_AS(ipt::entropies(off_trace), InvariantError);
}

TEST_CASE("invariance residual distinguishes singlets from stretched states") {
    CHECK(ipt::invariance_residual(singlet()) < 1e-15);

    DenseTensor up2 = DenseTensor::zeros({2, 2});
    up2.amps[up2.ravel({0, 0})] = 1.0;  // both spins down: |m_tot| = 1
    CHECK(ipt::invariance_residual(up2) == Approx(1.0));

    // bell pair is not invariant either: J_z kills it but J_x does not
    CHECK(ipt::invariance_residual(bell_pair()) == Approx(1.0));
}

TEST_CASE("perfectness report on small states") {
    auto rep = ipt::perfectness_report(bell_pair(), 1e-10);
    REQUIRE(rep.records.size() == 2);  // subsets {1} and {2}
    CHECK(rep.perfect);
    CHECK(rep.max_deviation < 1e-12);
    CHECK(rep.records[0].parties == std::vector<int>{1});
    CHECK(rep.records[1].parties == std::vector<int>{2});
    CHECK(rep.records[0].renyi2 == Approx(std::log(2.0)));

    // GHZ on 4 parties: 1-party marginals mixed, 2-party ones are not
    auto rep4 = ipt::perfectness_report(ghz(4), 1e-10);
    CHECK_FALSE(rep4.perfect);
    REQUIRE(rep4.records.size() == 4 + 6);
    for (const auto& r : rep4.records) {
        if (r.parties.size() == 1)
            CHECK(r.deviation < 1e-12);
        else
            CHECK(r.deviation == Approx(0.5));  // diag(1/2,0,0,1/2) vs I/4
    }
    CHECK(rep4.max_deviation == Approx(0.5));

    CHECK_THROWS_AS(ipt::perfectness_report(DenseTensor::zeros({2, 2})), ArgumentError);
}

TEST_CASE("jacobi eigenvalues on known matrices") {
    // real symmetric 3x3 with known spectrum {1, 2, 4}
    std::vector<double> a = {
        7.0 / 3, -2.0 / 3, -2.0 / 3,
        -2.0 / 3, 7.0 / 3, -2.0 / 3,
        -2.0 / 3, -2.0 / 3, 7.0 / 3,
    };
    auto vals = ipt::jacobi_eigenvalues(a, 3);
    REQUIRE(vals.size() == 3);
    CHECK(vals[0] == Approx(1.0));
    CHECK(vals[1] == Approx(3.0));
    CHECK(vals[2] == Approx(3.0));

    // Hermitian 2x2 [[1, i],[-i, 1]] has eigenvalues 0 and 2
    std::vector<Complex> h = {Complex(1, 0), Complex(0, 1), Complex(0, -1), Complex(1, 0)};
    auto hv = ipt::hermitian_eigenvalues(h, 2);
    REQUIRE(hv.size() == 2);
    CHECK(hv[0] == Approx(0.0).margin(1e-12));
    CHECK(hv[1] == Approx(2.0));
}
