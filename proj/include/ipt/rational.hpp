#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <deque>

#include "ipt/errors.hpp"

namespace ipt {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact factorial with a per-thread cache; arguments here stay small
// (bounded by j1+j2+j3+1) so the cache never grows much.
inline const BigInt& factorial(int n) {
    if (n < 0) throw ArgumentError("factorial of negative integer");
    thread_local std::deque<BigInt> cache{BigInt(1)};
    while (static_cast<int>(cache.size()) <= n)
        cache.push_back(cache.back() * static_cast<int>(cache.size()));
    return cache[static_cast<std::size_t>(n)];
}

inline int sgn(const Rational& r) {
    if (r > 0) return 1;
    if (r < 0) return -1;
    return 0;
}

}  // namespace ipt
