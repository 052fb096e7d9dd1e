#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>

namespace mulab {

// Arbitrary-precision integer for subtree counts and exact products.
// Subtree counts of thousand-node trees overflow any fixed-width type.
using BigInt = boost::multiprecision::cpp_int;

// Natural log of a positive BigInt, computed from the top 64 bits plus the
// bit length. Error is below 2^-50, negligible against Monte Carlo noise.
inline double log_big(const BigInt& x) {
    if (x <= 0) return -std::numeric_limits<double>::infinity();
    long bits = long(boost::multiprecision::msb(x)) + 1;
    if (bits <= 62) return std::log(double(uint64_t(x)));
    long shift = bits - 62;
    BigInt top = x >> shift;
    return std::log(double(uint64_t(top))) + double(shift) * std::log(2.0);
}

inline double log2_big(const BigInt& x) {
    static const double kLn2 = std::log(2.0);
    return log_big(x) / kLn2;
}

}  // namespace mulab
