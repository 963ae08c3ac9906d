#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace sqeiar {

/// Shortest decimal text that parses back to exactly `value`.
inline std::string format_number(double value) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, end);
}

}  // namespace sqeiar
