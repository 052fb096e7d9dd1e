#pragma once

#include <charconv>
#include <string>

namespace mulab {

// Locale-independent fixed-point formatting for every number we emit, so
// result files are byte-identical across machines and reruns.
inline std::string fixed_double(double x, int precision = 6) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed, precision);
    return std::string(buf, res.ptr);
}

}  // namespace mulab
