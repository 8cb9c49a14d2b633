#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "ipt/half_int.hpp"
#include "ipt/rational.hpp"
#include "ipt/ssr.hpp"

using ipt::ArgumentError;
using ipt::BigInt;
using ipt::HalfInt;
using ipt::RangeError;
using ipt::Rational;
using ipt::SSR;

namespace {

// distance in representable steps between two positive doubles
std::int64_t ulp_distance(double a, double b) {
    auto ia = std::bit_cast<std::int64_t>(a);
    auto ib = std::bit_cast<std::int64_t>(b);
    return ia > ib ? ia - ib : ib - ia;
}

// exact half-ulp of d as a rational (d finite, nonzero)
Rational half_ulp(double d) {
    d = std::fabs(d);
    int e = std::ilogb(d);
    if (e < -1022) e = -1022;                   // subnormal quantum
    const int k = e - 53;                        // ulp = 2^(e-52), half = 2^(e-53)
    if (k >= 0) return Rational(BigInt(1) << k, 1);
    return Rational(1, BigInt(1) << (-k));
}

bool mantissa_even(double d) { return (std::bit_cast<std::uint64_t>(d) & 1u) == 0; }

}  // namespace

TEST_CASE("half-integer parsing accepts all three syntaxes") {
    CHECK(HalfInt::parse("3/2").twice() == 3);
    CHECK(HalfInt::parse("1.5").twice() == 3);
    CHECK(HalfInt::parse("2j=3").twice() == 3);
    CHECK(HalfInt::parse("2").twice() == 4);
    CHECK(HalfInt::parse("2.0").twice() == 4);
    CHECK(HalfInt::parse("-1/2").twice() == -1);
    CHECK(HalfInt::parse("-0.5").twice() == -1);
    CHECK(HalfInt::parse("0").twice() == 0);
    CHECK(HalfInt::parse("2j=-3").twice() == -3);

    CHECK_THROWS_AS(HalfInt::parse("3/4"), ArgumentError);
    CHECK_THROWS_AS(HalfInt::parse("1.25"), ArgumentError);
    CHECK_THROWS_AS(HalfInt::parse("abc"), ArgumentError);
    CHECK_THROWS_AS(HalfInt::parse(""), ArgumentError);
    CHECK_THROWS_AS(HalfInt::parse("2j=x"), ArgumentError);
}

TEST_CASE("half-integer canonical text") {
    CHECK(HalfInt::parse("1.5").str() == "3/2");
    CHECK(HalfInt::parse("2j=4").str() == "2");
    CHECK(HalfInt::parse("-0.5").str() == "-1/2");
    CHECK(HalfInt(0).str() == "0");
}

TEST_CASE("magnetic ranges and indexing") {
    auto j = HalfInt::parse("3/2");
    auto ms = ipt::m_range(j);
    REQUIRE(ms.size() == 4);
    CHECK(ms.front().twice() == -3);
    CHECK(ms.back().twice() == 3);
    for (std::size_t i = 0; i < ms.size(); ++i) CHECK(ipt::m_index(j, ms[i]) == i);

    CHECK(ipt::m_valid(j, HalfInt::parse("1/2")));
    CHECK_FALSE(ipt::m_valid(j, HalfInt(1)));                     // parity mismatch
    CHECK_FALSE(ipt::m_valid(j, HalfInt::parse("5/2")));          // out of range
    CHECK_THROWS_AS(ipt::m_index(j, HalfInt(1)), ArgumentError);
    CHECK_THROWS_AS(ipt::m_range(HalfInt(-1)), ArgumentError);
}

TEST_CASE("signed-sqrt-rational invariants") {
    SSR zero;
    CHECK(zero.sign() == 0);
    CHECK(zero.mag2() == 0);
    CHECK(SSR(1, Rational(0)).sign() == 0);  // normalizes to canonical zero
    CHECK_THROWS_AS(SSR(0, Rational(1, 2)), ArgumentError);
    CHECK_THROWS_AS(SSR(2, Rational(1, 2)), ArgumentError);
    CHECK_THROWS_AS(SSR(1, Rational(-1, 2)), ArgumentError);
}

TEST_CASE("signed-sqrt-rational multiplication is exact") {
    SSR a(1, Rational(1, 2));
    SSR b(-1, Rational(1, 3));
    SSR c = a * b;
    CHECK(c.sign() == -1);
    CHECK(c.mag2() == Rational(1, 6));
    CHECK((a * SSR()).is_zero());
    CHECK((-a).sign() == -1);
    CHECK(a.times_rational(Rational(-2, 3)) == SSR(-1, Rational(2, 9)));
    CHECK(SSR::of_rational(Rational(-3, 4)) == SSR(-1, Rational(9, 16)));
    CHECK(a.square() == Rational(1, 2));
    CHECK(a.str() == "+sqrt(1/2)");
    CHECK(b.str() == "-sqrt(1/3)");
    CHECK(SSR().str() == "0");
}

TEST_CASE("rational to double is correctly rounded") {
    // spot values
    CHECK(ipt::rational_to_double(Rational(1, 2)) == 0.5);
    CHECK(ipt::rational_to_double(Rational(-3, 4)) == -0.75);
    CHECK(ipt::rational_to_double(Rational(1, 3)) == 1.0 / 3.0);
    CHECK(ipt::rational_to_double(Rational(0)) == 0.0);

    // exhaustive small fractions plus pseudo-random wide ones, verified by
    // the defining property: |r - fl(r)| <= half ulp, ties to even mantissa
    auto check_correct = [](const Rational& r) {
        const double d = ipt::rational_to_double(r);
        REQUIRE(std::isfinite(d));
        const Rational diff = boost::multiprecision::abs(r - Rational(d));
        if (d == 0.0) {
            CHECK(diff <= Rational(1, BigInt(1) << 1075));
            return;
        }
        const Rational hu = half_ulp(d);
        if (diff == hu)
            CHECK(mantissa_even(d));
        else
            CHECK(diff < hu);
    };

    for (int num = 1; num <= 40; ++num)
        for (int den = 1; den <= 40; ++den) {
            check_correct(Rational(num, den));
            check_correct(Rational(-num, den));
        }

    std::uint64_t s = 0x12345678u;
    auto next = [&s]() {
        s += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    };
    for (int trial = 0; trial < 500; ++trial) {
        BigInt num = 1, den = 1;
        const int nw = 1 + static_cast<int>(next() % 4);
        const int dw = 1 + static_cast<int>(next() % 4);
        for (int w = 0; w < nw; ++w) num = (num << 64) | next();
        for (int w = 0; w < dw; ++w) den = (den << 64) | next();
        check_correct(Rational(num, den));
        check_correct(Rational(-num, den));
    }

    // values straddling the subnormal boundary
    check_correct(Rational(1, BigInt(1) << 1074));
    check_correct(Rational(3, BigInt(1) << 1076));
    check_correct(Rational((BigInt(1) << 80) + 12345, BigInt(1) << 1120));
    CHECK(ipt::rational_to_double(Rational(1, BigInt(1) << 1074)) == std::ldexp(1.0, -1074));
    CHECK(ipt::rational_to_double(Rational(1, BigInt(1) << 1075)) == 0.0);  // tie to even
}

TEST_CASE("rational to double overflow raises a range error") {
    CHECK_THROWS_AS(ipt::rational_to_double(Rational(BigInt(1) << 1024, 1)), RangeError);
    CHECK_THROWS_AS(ipt::rational_to_double(Rational(BigInt(1) << 1100, 3)), RangeError);
    // largest representable double is fine
    const BigInt max_num = (BigInt(1) << 1024) - (BigInt(1) << 971);
    CHECK(ipt::rational_to_double(Rational(max_num, 1)) == std::numeric_limits<double>::max());
    // just above the rounding boundary overflows
    CHECK_THROWS_AS(ipt::rational_to_double(Rational((BigInt(1) << 1024) - (BigInt(1) << 960), 1)),
                    RangeError);
}

TEST_CASE("signed-sqrt-rational to double is within 2 ulp") {
    const double r3 = SSR(1, Rational(1, 3)).to_double();
    CHECK(ulp_distance(r3, 0.5773502691896257) <= 2);
    CHECK(SSR(-1, Rational(1, 6)).to_double() == Catch::Approx(-0.408248290463863).epsilon(1e-14));
    CHECK(SSR(1, Rational(1, 4)).to_double() == 0.5);
    CHECK(SSR(1, Rational(9, 16)).to_double() == 0.75);
    CHECK(SSR().to_double() == 0.0);

    // huge and tiny magnitudes survive via exact power-of-four prescaling
    CHECK(SSR(1, Rational(BigInt(1) << 2000, 1)).to_double() == std::ldexp(1.0, 1000));
    CHECK(SSR(1, Rational(1, BigInt(1) << 2000)).to_double() == std::ldexp(1.0, -1000));
    CHECK(SSR(1, Rational(BigInt(9) << 2000, 1)).to_double() == 3.0 * std::ldexp(1.0, 1000));
    CHECK_THROWS_AS(SSR(1, Rational(BigInt(1) << 2100, 1)).to_double(), RangeError);
}

TEST_CASE("factorial cache") {
    CHECK(ipt::factorial(0) == 1);
    CHECK(ipt::factorial(5) == 120);
    CHECK(ipt::factorial(20) == BigInt("2432902008176640000"));
    CHECK_THROWS_AS(ipt::factorial(-1), ArgumentError);
}
