#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

namespace bellforge {

// Shortest decimal string (up to 12 significant digits) that parses back to
// the same double. Values needing more than 12 digits are truncated to 12,
// which keeps output stable across platforms at well below practical
// tolerances. -0.0 is normalized to "0".
inline std::string format_number(double value) {
    if (value == 0.0) return "0";
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";

    char buf[64];
    for (int precision = 1; precision <= 12; ++precision) {
        auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, precision);
        std::string candidate(buf, res.ptr);
        double parsed = 0.0;
        auto back = std::from_chars(candidate.data(),
                                    candidate.data() + candidate.size(), parsed);
        if (back.ec == std::errc() && parsed == value) return candidate;
        if (precision == 12) return candidate;
    }
    return {};
}

} // namespace bellforge
