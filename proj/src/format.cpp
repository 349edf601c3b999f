#include "lagsum/format.hpp"

#include <cstdlib>

namespace lagsum::detail {

// digits holds d1 d2 ... dk for the value d1.d2...dk * 10^exponent.
std::string render_digits(bool negative, const std::string& digits, int exponent)
{
    std::string out = negative ? "-" : "";
    if (exponent >= -3 && exponent < 4) {
        if (exponent >= 0) {
            std::size_t int_len = std::size_t(exponent) + 1;
            out += digits.substr(0, int_len);
            if (int_len < digits.size())
                out += "." + digits.substr(int_len);
        } else {
            out += "0." + std::string(std::size_t(-exponent - 1), '0') + digits;
        }
        return out;
    }
    // 0.d1d2...dk * 10^(exponent+1)
    int shifted = exponent + 1;
    char buf[16];
    std::snprintf(buf, sizeof buf, "e%c%02d", shifted < 0 ? '-' : '+', std::abs(shifted));
    out += "0." + digits + buf;
    return out;
}

} // namespace lagsum::detail
