#pragma once

#include <compare>
#include <cstdlib>
#include <string>
#include <vector>

#include "ipt/errors.hpp"

namespace ipt {

// Half-integer stored as twice its value, so 3/2 is twice()==3.
// This keeps spin and magnetic quantum numbers exact.
class HalfInt {
public:
    constexpr HalfInt() : t_(0) {}
    constexpr explicit HalfInt(int whole) : t_(2 * whole) {}

    static constexpr HalfInt from_twice(int twice) {
        HalfInt h;
        h.t_ = twice;
        return h;
    }

    constexpr int twice() const { return t_; }
    constexpr bool is_integer() const { return t_ % 2 == 0; }
    constexpr bool is_negative() const { return t_ < 0; }
    constexpr double value() const { return 0.5 * t_; }

    // Dimension 2j+1 of the spin-j irrep; only meaningful for j >= 0.
    constexpr int dim() const { return t_ + 1; }

    constexpr friend HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.t_ + b.t_); }
    constexpr friend HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.t_ - b.t_); }
    constexpr friend HalfInt operator-(HalfInt a) { return from_twice(-a.t_); }
    constexpr auto operator<=>(const HalfInt&) const = default;

    constexpr HalfInt abs() const { return from_twice(t_ < 0 ? -t_ : t_); }

    // Canonical text: integers as "2", half-integers as "3/2".
    std::string str() const {
        if (is_integer()) return std::to_string(t_ / 2);
        return std::to_string(t_) + "/2";
    }

    // Accepts "3/2", "1.5", "2j=3" (the last gives twice the value directly).
    static HalfInt parse(const std::string& text);

private:
    int t_;
};

inline HalfInt HalfInt::parse(const std::string& text) {
    auto fail = [&]() -> HalfInt {
        throw ArgumentError("cannot parse half-integer from '" + text + "'");
    };
    if (text.empty()) return fail();

    auto parse_int = [&](const std::string& s, long& out) {
        char* end = nullptr;
        errno = 0;
        out = std::strtol(s.c_str(), &end, 10);
        return errno == 0 && end && *end == '\0' && !s.empty();
    };

    if (text.rfind("2j=", 0) == 0) {
        long t;
        if (!parse_int(text.substr(3), t)) return fail();
        return from_twice(static_cast<int>(t));
    }
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        long num, den;
        if (!parse_int(text.substr(0, slash), num)) return fail();
        if (!parse_int(text.substr(slash + 1), den)) return fail();
        if (den == 0 || (2 * num) % den != 0) return fail();
        return from_twice(static_cast<int>(2 * num / den));
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        long whole;
        std::string head = text.substr(0, dot);
        std::string frac = text.substr(dot + 1);
        bool neg = !head.empty() && head[0] == '-';
        if (head == "-" || head.empty()) head = neg ? "-0" : "0";
        if (!parse_int(head, whole)) return fail();
        // Only .0 and .5 denote half-integers.
        if (frac == "5") return from_twice(static_cast<int>(2 * whole + (neg ? -1 : 1)));
        if (frac == "0" || frac.empty()) return from_twice(static_cast<int>(2 * whole));
        return fail();
    }
    long whole;
    if (!parse_int(text, whole)) return fail();
    return from_twice(static_cast<int>(2 * whole));
}

// True when m is an admissible magnetic number for spin j:
// same parity and |m| <= j.
inline bool m_valid(HalfInt j, HalfInt m) {
    if ((j.twice() - m.twice()) % 2 != 0) return false;
    return m.abs() <= j;
}

// All magnetic numbers -j..j in ascending order; index of m is (m+j).twice()/2.
inline std::vector<HalfInt> m_range(HalfInt j) {
    if (j.is_negative()) throw ArgumentError("m_range needs a nonnegative spin");
    std::vector<HalfInt> out;
    out.reserve(static_cast<std::size_t>(j.dim()));
    for (int t = -j.twice(); t <= j.twice(); t += 2) out.push_back(HalfInt::from_twice(t));
    return out;
}

inline std::size_t m_index(HalfInt j, HalfInt m) {
    if (!m_valid(j, m)) throw ArgumentError("magnetic number " + m.str() + " invalid for spin " + j.str());
    return static_cast<std::size_t>((m.twice() + j.twice()) / 2);
}

}  // namespace ipt
