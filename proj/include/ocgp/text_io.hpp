#pragma once

#include <charconv>
#include <string>
#include <string_view>

#include "ocgp/errors.hpp"

namespace ocgp {

/// Shortest decimal form that round-trips the exact double.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw ConfigError("malformed number '" + std::string(text) + "'");
    }
    return v;
}

inline long parse_long(std::string_view text) {
    long v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw ConfigError("malformed integer '" + std::string(text) + "'");
    }
    return v;
}

}  // namespace ocgp
