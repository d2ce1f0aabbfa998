#pragma once

#include <charconv>
#include <string>

namespace aai {

/// Shortest round-trip decimal form: identical config gives byte-identical
/// output independent of locale or thread count.
inline std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

} // namespace aai
