#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "ipt/ame.hpp"

using Catch::Approx;
using ipt::ArgumentError;
using ipt::Complex;
using ipt::DenseTensor;
using ipt::GF;
using ipt::LatinSquare;

namespace {

// exhaustive field-axiom sweep; cubic in q, so keep q modest
void check_field_axioms(const GF& f) {
    const int q = f.q();
    for (int a = 0; a < q; ++a) {
        CHECK(f.add(a, 0) == a);
        CHECK(f.mul(a, 1) == a);
        CHECK(f.add(a, f.neg(a)) == 0);
        if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
        for (int b = 0; b < q; ++b) {
            CHECK(f.add(a, b) == f.add(b, a));
            CHECK(f.mul(a, b) == f.mul(b, a));
            if (q <= 9)
                for (int c = 0; c < q; ++c) {
                    CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
                    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                }
        }
    }
    // nonzero elements form a group: products of nonzeros are nonzero
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b) CHECK(f.mul(a, b) != 0);
}

bool uniform_support(const DenseTensor& psi, int q) {
    const double amp = 1.0 / static_cast<double>(q);
    int support = 0;
    for (const auto& z : psi.amps) {
        if (z == Complex(0, 0)) continue;
        if (std::abs(z - Complex(amp, 0)) > 1e-15) return false;
        ++support;
    }
    return support == q * q;
}

}  // namespace

TEST_CASE("finite fields satisfy the axioms") {
    for (int q : {2, 3, 4, 5, 7, 8, 9}) check_field_axioms(ipt::gf_field(q));
    for (int q : {16, 25, 27, 32, 49, 64}) {
        auto f = ipt::gf_field(q);
        CHECK(f.q() == q);
        // spot-check inverses and the characteristic
        for (int a = 1; a < q; a += std::max(1, q / 7)) CHECK(f.mul(a, f.inv(a)) == 1);
        int s = 0;
        for (int i = 0; i < f.p(); ++i) s = f.add(s, 1);
        CHECK(s == 0);
    }
}

TEST_CASE("field construction rejects bad orders and moduli") {
    CHECK_THROWS_AS(ipt::gf_field(6), ArgumentError);
    CHECK_THROWS_AS(ipt::gf_field(12), ArgumentError);
    CHECK_THROWS_AS(ipt::gf_field(1), ArgumentError);
    CHECK_THROWS_AS(ipt::gf_field(121), ipt::UnsupportedError);  // 11^2: no built-in modulus
    CHECK_NOTHROW(ipt::gf_field(121, {1, 1, 1}));  // x^2+x+1 happens to be irreducible mod 11
    CHECK_THROWS_AS(ipt::gf_field(121, {1, 2, 1}), ArgumentError);  // (x+1)^2 is reducible
    CHECK_NOTHROW(ipt::gf_field(101));  // any prime gets the trivial modulus

    auto f4 = ipt::gf_field(4);
    CHECK(f4.p() == 2);
    CHECK(f4.k() == 2);
    CHECK(f4.modulus() == std::vector<int>{1, 1, 1});
    CHECK_THROWS_AS(f4.add(1, 4), ArgumentError);
    CHECK_THROWS_AS(f4.inv(0), ArgumentError);
}

TEST_CASE("generator minors are units exactly when alpha avoids 0 and 1") {
    auto f = ipt::gf_field(5);
    for (int alpha = 2; alpha < 5; ++alpha) {
        // columns of [[1,0,1,1],[0,1,1,alpha]]; all six 2x2 minors nonzero
        const int cols[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, alpha}};
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                const int det =
                    f.sub(f.mul(cols[i][0], cols[j][1]), f.mul(cols[i][1], cols[j][0]));
                CHECK(det != 0);
            }
    }
}

TEST_CASE("generator states are perfect for the built-in prime powers") {
    for (int q : {3, 4, 5}) {
        auto psi = ipt::mds_state(q, 2);
        CHECK(uniform_support(psi, q));
        CHECK(psi.is_normalized());
        auto rep = ipt::perfectness_report(psi, 1e-10);
        CHECK(rep.perfect);
        CHECK(rep.records.size() == 10);  // 4 singles + 6 pairs
    }
}

TEST_CASE("generator state argument validation") {
    CHECK_THROWS_AS(ipt::mds_state(2, 0), ArgumentError);  // GF(2) has no usable alpha
    CHECK_THROWS_AS(ipt::mds_state(3, 0), ArgumentError);
    CHECK_THROWS_AS(ipt::mds_state(3, 1), ArgumentError);
    CHECK_THROWS_AS(ipt::mds_state(3, 3), ArgumentError);  // outside the field
    CHECK_THROWS_AS(ipt::mds_state(6, 2), ArgumentError);  // not a prime power
}

TEST_CASE("generator and latin-square constructions coincide over a field") {
    for (int q : {3, 4, 5}) {
        auto f = ipt::gf_field(q);
        const int alpha = 2;
        LatinSquare l1, l2;
        l1.order = l2.order = q;
        l1.grid.resize(static_cast<std::size_t>(q) * static_cast<std::size_t>(q));
        l2.grid.resize(l1.grid.size());
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) {
                l1.grid[static_cast<std::size_t>(i * q + j)] = f.add(i, j);
                l2.grid[static_cast<std::size_t>(i * q + j)] = f.add(i, f.mul(alpha, j));
            }
        auto a = ipt::mds_state(q, alpha);
        auto b = ipt::mols_state(l1, l2);
        REQUIRE(a.amps.size() == b.amps.size());
        for (std::size_t i = 0; i < a.amps.size(); ++i) CHECK(a.amps[i] == b.amps[i]);
    }
}

TEST_CASE("party-wise products preserve perfectness") {
    auto s3 = ipt::mds_state(3, 2);
    auto s9 = ipt::compose_product(s3, s3);
    CHECK(s9.dims == std::vector<int>{9, 9, 9, 9});
    CHECK(uniform_support(s9, 9));
    CHECK(ipt::perfectness_report(s9, 1e-10).perfect);
    // the direct GF(9) construction also passes (the states need not be equal)
    CHECK(ipt::perfectness_report(ipt::mds_state(9, 2), 1e-10).perfect);

    // product with a non-perfect input is not perfect
    DenseTensor base = DenseTensor::zeros({2, 2, 2, 2});
    base.amps[0] = 1.0;
    auto bad = ipt::compose_product(s3, base);
    CHECK_FALSE(ipt::perfectness_report(bad, 1e-10).perfect);

    CHECK_THROWS_AS(ipt::compose_product(s3, DenseTensor::zeros({2, 2})), ArgumentError);
}

TEST_CASE("latin squares validate and detect orthogonality") {
    auto l1 = ipt::cyclic_latin(3, 1);
    auto l2 = ipt::cyclic_latin(3, 2);
    CHECK(ipt::mutually_orthogonal(l1, l2));
    CHECK_FALSE(ipt::mutually_orthogonal(l1, l1));

    auto psi = ipt::mols_state(l1, l2);
    CHECK(ipt::perfectness_report(psi, 1e-10).perfect);

    // order 2: both latin squares exist but no pair is orthogonal
    LatinSquare a, b;
    a.order = b.order = 2;
    a.grid = {0, 1, 1, 0};
    b.grid = {1, 0, 0, 1};
    CHECK_THROWS_AS(ipt::mols_state(a, a), ipt::OrthogonalityError);
    CHECK_THROWS_AS(ipt::mols_state(a, b), ipt::OrthogonalityError);

    LatinSquare broken;
    broken.order = 2;
    broken.grid = {0, 1, 0, 1};
    CHECK_THROWS_AS(broken.validate(), ipt::InvariantError);
    CHECK_THROWS_AS(ipt::mols_state(broken, a), ipt::InvariantError);
}

TEST_CASE("latin square text round trip and parse failures") {
    auto l = ipt::cyclic_latin(4, 1);
    auto back = ipt::parse_latin(ipt::format_latin(l));
    CHECK(back.order == 4);
    CHECK(back.grid == l.grid);

    CHECK_THROWS_AS(ipt::parse_latin(""), ipt::ParseError);
    CHECK_THROWS_AS(ipt::parse_latin("0 1\n1"), ipt::ParseError);
    CHECK_THROWS_AS(ipt::parse_latin("0 x\n1 0"), ipt::ParseError);
    CHECK_THROWS_AS(ipt::parse_latin("0 1\n0 1"), ipt::InvariantError);
}

TEST_CASE("dimension dispatcher covers the three mechanisms") {
    CHECK(ipt::perfectness_report(ipt::ame_state(3), 1e-10).perfect);
    CHECK(ipt::perfectness_report(ipt::ame_state(4), 1e-10).perfect);

    auto s12 = ipt::ame_state(12);  // 4 * 3 via the product route
    CHECK(s12.dims == std::vector<int>{12, 12, 12, 12});
    CHECK(uniform_support(s12, 12));
    CHECK(ipt::perfectness_report(s12, 1e-10).perfect);

    auto s15 = ipt::ame_state(15);  // 3 * 5
    CHECK(ipt::perfectness_report(s15, 1e-10).perfect);

    CHECK_THROWS_AS(ipt::ame_state(2), ArgumentError);
    CHECK_THROWS_WITH(ipt::ame_state(6), Catch::Matchers::ContainsSubstring("open problem"));
    CHECK_THROWS_AS(ipt::ame_state(10), ipt::UnsupportedError);
    CHECK_THROWS_AS(ipt::ame_state(99), ipt::ResourceError);  // 99^4 amplitudes too large
}
