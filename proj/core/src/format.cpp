#include "oat/format.hpp"

#include <cstdio>

namespace oat {

std::string format_fixed(double value, int digits) {
    char buffer[64];
    // glibc converts the exact binary value and resolves true decimal ties
    // with the current rounding mode, which is round-half-to-even.
    std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
    std::string out(buffer);
    if (out == "-0" || out.rfind("-0.", 0) == 0) {
        bool all_zero = true;
        for (char c : out.substr(1)) {
            if (c != '0' && c != '.') {
                all_zero = false;
                break;
            }
        }
        if (all_zero) {
            out.erase(0, 1); // normalize -0.000 to 0.000
        }
    }
    return out;
}

std::string format_percent(double fraction) {
    return format_fixed(fraction * 100.0, 1) + "%";
}

} // namespace oat
