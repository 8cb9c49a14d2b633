#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ipt/coupling.hpp"
#include "ladder_oracle.hpp"

using ipt::ArgumentError;
using ipt::HalfInt;
using ipt::Rational;
using ipt::SSR;

namespace {
HalfInt h(const char* s) { return HalfInt::parse(s); }
HalfInt ht(int twice) { return HalfInt::from_twice(twice); }
}  // namespace

TEST_CASE("series and triangle") {
    auto s = ipt::cg_series(h("1/2"), h("1"));
    REQUIRE(s.size() == 2);
    CHECK(s[0] == h("1/2"));
    CHECK(s[1] == h("3/2"));
    CHECK(ipt::triangle_ok(HalfInt(1), HalfInt(1), HalfInt(2)));
    CHECK_FALSE(ipt::triangle_ok(HalfInt(1), HalfInt(1), HalfInt(3)));
    CHECK_FALSE(ipt::triangle_ok(h("1/2"), h("1/2"), h("3/2")));
    CHECK_FALSE(ipt::triangle_ok(h("1/2"), HalfInt(1), HalfInt(1)));  // non-integer total
}

TEST_CASE("clebsch-gordan frozen exact values") {
    CHECK(ipt::cgc(h("1/2"), h("1/2"), h("1/2"), h("-1/2"), h("0"), h("0")) ==
          SSR(1, Rational(1, 2)));
    CHECK(ipt::cgc(HalfInt(1), HalfInt(0), HalfInt(1), HalfInt(0), HalfInt(0), HalfInt(0)) ==
          SSR(-1, Rational(1, 3)));
    // selection-rule failures return exact zero
    CHECK(ipt::cgc(HalfInt(1), HalfInt(1), HalfInt(1), HalfInt(1), HalfInt(1), HalfInt(2)).is_zero());
    CHECK(ipt::cgc(HalfInt(1), HalfInt(1), HalfInt(1), HalfInt(0), HalfInt(2), HalfInt(0)).is_zero());
    CHECK(ipt::cgc(HalfInt(1), HalfInt(0), HalfInt(1), HalfInt(0), HalfInt(3), HalfInt(0)).is_zero());
    // parity violation is a caller bug
    CHECK_THROWS_AS(ipt::cgc(HalfInt(1), h("1/2"), HalfInt(1), h("1/2"), HalfInt(1), HalfInt(1)),
                    ArgumentError);
    CHECK_THROWS_AS(ipt::cgc(HalfInt(-1), HalfInt(0), HalfInt(1), HalfInt(0), HalfInt(1), HalfInt(0)),
                    ArgumentError);
}

TEST_CASE("wigner 3j frozen exact values") {
    CHECK(ipt::wigner3j(HalfInt(1), HalfInt(1), HalfInt(1), HalfInt(1), HalfInt(0), HalfInt(-1)) ==
          SSR(-1, Rational(1, 6)));
    CHECK(ipt::wigner3j(HalfInt(1), HalfInt(1), HalfInt(0), HalfInt(0), HalfInt(0), HalfInt(0)) ==
          SSR(-1, Rational(1, 3)));
    CHECK(ipt::wigner3j(h("1/2"), h("1/2"), HalfInt(0), h("1/2"), h("-1/2"), HalfInt(0)) ==
          SSR(1, Rational(1, 2)));
    CHECK(ipt::wigner3j(h("1/2"), h("1/2"), HalfInt(0), h("-1/2"), h("1/2"), HalfInt(0)) ==
          SSR(-1, Rational(1, 2)));
    // equal integer spins with odd total vanish identically
    CHECK(ipt::wigner3j(HalfInt(1), HalfInt(1), HalfInt(1), HalfInt(0), HalfInt(0), HalfInt(0)).is_zero());
}

TEST_CASE("condon-shortley anchor is positive") {
    for (int tj1 = 0; tj1 <= 5; ++tj1)
        for (int tj2 = 0; tj2 <= 5; ++tj2)
            for (auto J : ipt::cg_series(ht(tj1), ht(tj2))) {
                // <j1 j1; j2 (J-j1) | J J> > 0 whenever admissible
                auto m2 = J - ht(tj1);
                if (m2.abs() > ht(tj2)) continue;
                auto c = ipt::cgc(ht(tj1), ht(tj1), ht(tj2), m2, J, J);
                CHECK(c.sign() == 1);
            }
}

TEST_CASE("clebsch-gordan matches the ladder-construction oracle") {
    for (int tj1 = 0; tj1 <= 5; ++tj1)
        for (int tj2 = 0; tj2 <= 5; ++tj2) {
            auto tab = ladder_oracle::build(tj1, tj2);
            for (auto J : ipt::cg_series(ht(tj1), ht(tj2)))
                for (auto M : ipt::m_range(J))
                    for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
                        const int tm2 = M.twice() - tm1;
                        if (tm2 < -tj2 || tm2 > tj2) continue;
                        const double lib =
                            ipt::cgc(ht(tj1), ht(tm1), ht(tj2), ht(tm2), J, M).to_double();
                        const double ora = ladder_oracle::cg(tab, tm1, tm2, J.twice(), M.twice());
                        CHECK(std::abs(lib - ora) < 1e-12);
                    }
        }
}

TEST_CASE("exact orthogonality of clebsch-gordan columns") {
    // sum_{m1,m2} <j1 m1; j2 m2|J M><j1 m1; j2 m2|J' M'> = delta exactly
    for (int tj1 = 0; tj1 <= 4; ++tj1)
        for (int tj2 = 0; tj2 <= 4; ++tj2) {
            auto series = ipt::cg_series(ht(tj1), ht(tj2));
            for (auto J : series)
                for (auto Jp : series) {
                    if (J != Jp) continue;
                    for (auto M : ipt::m_range(J)) {
                        Rational acc = 0;
                        for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
                            const int tm2 = M.twice() - tm1;
                            if (tm2 < -tj2 || tm2 > tj2) continue;
                            acc += ipt::cgc(ht(tj1), ht(tm1), ht(tj2), ht(tm2), J, M).square();
                        }
                        CHECK(acc == 1);
                    }
                }
        }
}

TEST_CASE("exact 3j orthogonality with weight 2j+1") {
    // sum_{m1,m2} (3j)^2 = 1/(2j3+1) for admissible triples, exactly
    for (int tj1 = 0; tj1 <= 3; ++tj1)
        for (int tj2 = 0; tj2 <= 3; ++tj2)
            for (auto j3 : ipt::cg_series(ht(tj1), ht(tj2)))
                for (auto m3 : ipt::m_range(j3)) {
                    Rational acc = 0;
                    for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
                        const int tm2 = -m3.twice() - tm1;
                        if (tm2 < -tj2 || tm2 > tj2) continue;
                        acc += ipt::wigner3j(ht(tj1), ht(tj2), j3, ht(tm1), ht(tm2), m3).square();
                    }
                    CHECK(acc == Rational(1, j3.twice() + 1));
                }
}

TEST_CASE("3j even column permutations are exact symmetries") {
    for (int tj1 = 0; tj1 <= 5; ++tj1)
        for (int tj2 = 0; tj2 <= 5; ++tj2)
            for (auto j3 : ipt::cg_series(ht(tj1), ht(tj2))) {
                if (j3.twice() > 5) continue;
                for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2)
                    for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
                        const int tm3 = -tm1 - tm2;
                        if (tm3 < -j3.twice() || tm3 > j3.twice()) continue;
                        auto a = ipt::wigner3j(ht(tj1), ht(tj2), j3, ht(tm1), ht(tm2), ht(tm3));
                        auto b = ipt::wigner3j(ht(tj2), j3, ht(tj1), ht(tm2), ht(tm3), ht(tm1));
                        auto c = ipt::wigner3j(j3, ht(tj1), ht(tj2), ht(tm3), ht(tm1), ht(tm2));
                        CHECK(a == b);
                        CHECK(a == c);
                    }
            }
}

TEST_CASE("invariant dimension by recursion") {
    using ipt::inv_dim_exact;
    auto spins = [](std::initializer_list<const char*> xs) {
        std::vector<HalfInt> v;
        for (auto x : xs) v.push_back(HalfInt::parse(x));
        return v;
    };
    CHECK(inv_dim_exact(spins({"1/2", "1/2", "1/2", "1/2"})) == 2);
    CHECK(inv_dim_exact(spins({"1/2", "1/2", "1/2"})) == 0);
    CHECK(inv_dim_exact(spins({"3", "3", "3", "3"})) == 7);
    CHECK(inv_dim_exact(spins({"1", "1", "1"})) == 1);
    CHECK(inv_dim_exact(spins({"1/2", "1/2", "1/2", "1/2", "1/2", "1/2"})) == 5);
    CHECK(inv_dim_exact(spins({"1", "1", "1", "1", "1"})) == 6);
    CHECK(inv_dim_exact(spins({"1", "1", "1", "1"})) == 3);
    CHECK(inv_dim_exact(spins({"2", "2", "2", "2"})) == 5);
    CHECK(inv_dim_exact(spins({"2", "2", "2", "2", "2", "2"})) == 65);
    CHECK(inv_dim_exact(spins({"0"})) == 1);
    CHECK(inv_dim_exact(spins({"1"})) == 0);
    CHECK_THROWS_AS(inv_dim_exact({}), ArgumentError);
}

TEST_CASE("invariant dimension by group integral matches recursion") {
    using ipt::inv_dim_exact;
    using ipt::inv_dim_integral;
    std::vector<std::vector<HalfInt>> cases = {
        {h("1/2"), h("1/2")},
        {h("1/2"), h("1/2"), h("1/2"), h("1/2")},
        {HalfInt(1), HalfInt(1), HalfInt(1)},
        {HalfInt(1), HalfInt(1), HalfInt(1), HalfInt(1)},
        {HalfInt(2), HalfInt(2), HalfInt(2), HalfInt(2)},
        {HalfInt(3), HalfInt(3), HalfInt(3), HalfInt(3)},
        {h("1/2"), HalfInt(1), h("3/2"), HalfInt(2)},
        {h("5/2"), h("5/2"), HalfInt(1), HalfInt(2), HalfInt(2)},
        {HalfInt(2), HalfInt(2), HalfInt(2), HalfInt(2), HalfInt(2), HalfInt(2)},
    };
    for (const auto& c : cases) CHECK(inv_dim_integral(c) == inv_dim_exact(c));
}
