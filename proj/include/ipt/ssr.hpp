#pragma once

#include <cmath>
#include <string>

#include "ipt/errors.hpp"
#include "ipt/rational.hpp"

namespace ipt {

// Correctly rounded (nearest, ties to even) conversion of an exact rational
// to binary64. Rounds by exact integer division: the remainder decides the
// round and sticky bits, so the result is the true nearest double.
inline double rational_to_double(const Rational& r) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::msb;
    using boost::multiprecision::numerator;

    if (r == 0) return 0.0;
    const bool neg = r < 0;
    BigInt num = boost::multiprecision::abs(numerator(r));
    BigInt den = denominator(r);

    // f = floor(log2(num/den)); first estimate from bit lengths, then fix up.
    long f = static_cast<long>(msb(num)) - static_cast<long>(msb(den));
    {
        BigInt lhs = num, rhs = den;
        if (f >= 0)
            rhs <<= f;
        else
            lhs <<= -f;
        if (lhs < rhs) f -= 1;
    }
    if (f >= 1024) throw RangeError("rational " + r.str() + " overflows binary64");

    // Round at bit position 'prec' below the leading bit: 52 for normals,
    // fewer once the value dips into the subnormal range.
    long e = f - 52;           // candidate exponent of the unit in the last place
    if (e < -1074) e = -1074;  // subnormal: fixed quantum
    BigInt n2 = num, d2 = den;
    if (e <= 0)
        n2 <<= -e;
    else
        d2 <<= e;
    BigInt q, rem;
    boost::multiprecision::divide_qr(n2, d2, q, rem);
    const BigInt rem2 = rem << 1;
    const int cmp = (rem == 0) ? -1 : rem2.compare(d2);
    if (cmp > 0 || (cmp == 0 && boost::multiprecision::bit_test(q, 0))) ++q;

    // q <= 2^53 by construction (rounding may carry into exactly 2^53),
    // so the conversion below is exact and ldexp does the final scaling.
    double mag = std::ldexp(q.convert_to<double>(), static_cast<int>(e));
    if (std::isinf(mag)) throw RangeError("rational " + r.str() + " overflows binary64");
    return neg ? -mag : mag;
}

// sign * sqrt(mag2) with sign in {-1,0,+1} and mag2 an exact nonnegative
// rational. sign==0 iff mag2==0. Closed under multiplication; addition is
// deliberately absent (sums of square roots leave the form).
class SignedSqrtRational {
public:
    SignedSqrtRational() : sign_(0), mag2_(0) {}

    SignedSqrtRational(int sign, Rational mag2) : sign_(sign), mag2_(std::move(mag2)) {
        if (mag2_ < 0) throw ArgumentError("squared magnitude must be nonnegative");
        if (sign_ < -1 || sign_ > 1) throw ArgumentError("sign must be -1, 0 or +1");
        if (mag2_ == 0) sign_ = 0;
        if (sign_ == 0 && mag2_ != 0) throw ArgumentError("zero sign with nonzero magnitude");
    }

    // The exact value sgn(r)*sqrt(r^2) == r, i.e. embeds a rational exactly.
    static SignedSqrtRational of_rational(const Rational& r) {
        return SignedSqrtRational(sgn(r), r * r);
    }

    // sign * sqrt(m), for m >= 0.
    static SignedSqrtRational sqrt_of(int sign, const Rational& m) {
        return SignedSqrtRational(m == 0 ? 0 : sign, m);
    }

    int sign() const { return sign_; }
    const Rational& mag2() const { return mag2_; }
    bool is_zero() const { return sign_ == 0; }

    // The exact square of the value (drops the sign).
    const Rational& square() const { return mag2_; }

    friend SignedSqrtRational operator*(const SignedSqrtRational& a, const SignedSqrtRational& b) {
        return SignedSqrtRational(a.sign_ * b.sign_, a.mag2_ * b.mag2_);
    }

    SignedSqrtRational operator-() const { return SignedSqrtRational(-sign_, mag2_); }

    // Exact scaling by a rational: sign*sqrt(m) * r = (sign*sgn r)*sqrt(m r^2).
    SignedSqrtRational times_rational(const Rational& r) const {
        return SignedSqrtRational(sign_ * sgn(r), mag2_ * r * r);
    }

    friend bool operator==(const SignedSqrtRational& a, const SignedSqrtRational& b) {
        return a.sign_ == b.sign_ && a.mag2_ == b.mag2_;
    }

    // Correctly rounded rational conversion followed by one sqrt; at most
    // 2 ulp from the exact value. mag2 is pre-scaled by powers of 4 so the
    // intermediate never overflows or loses precision to subnormals even
    // when the final value is representable.
    double to_double() const {
        if (sign_ == 0) return 0.0;
        using boost::multiprecision::denominator;
        using boost::multiprecision::msb;
        using boost::multiprecision::numerator;
        Rational m = mag2_;
        long shift = 0;  // result = sqrt(m) * 2^shift
        const long bits = static_cast<long>(msb(numerator(m))) - static_cast<long>(msb(denominator(m)));
        if (bits > 512 || bits < -512) {
            shift = bits / 4;  // halve the exponent, then halve again for sqrt
            Rational scale = 1;
            if (shift > 0)
                scale = Rational(BigInt(1), BigInt(1) << (2 * shift));
            else
                scale = Rational(BigInt(1) << (-2 * shift), BigInt(1));
            m *= scale;
        }
        double root = std::sqrt(rational_to_double(m));
        double mag = std::ldexp(root, static_cast<int>(shift));
        if (std::isinf(mag)) throw RangeError("value overflows binary64");
        return sign_ < 0 ? -mag : mag;
    }

    // Exact display form: "+sqrt(1/2)", "-sqrt(1/3)", or "0".
    std::string str() const {
        if (sign_ == 0) return "0";
        return std::string(sign_ < 0 ? "-" : "+") + "sqrt(" + mag2_.str() + ")";
    }

private:
    int sign_;
    Rational mag2_;
};

using SSR = SignedSqrtRational;

}  // namespace ipt
