#ifndef LAGSUM_FORMAT_HPP
#define LAGSUM_FORMAT_HPP

#include <cstdio>
#include <cstdlib>
#include <ios>
#include <string>
#include <type_traits>

namespace lagsum {

namespace detail {

/// d.ddd...e+XX with `sig` significant digits.
template <class Real>
std::string scientific_string(const Real& x, int sig)
{
    if constexpr (std::is_floating_point_v<Real>) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*e", sig - 1, static_cast<double>(x));
        return buf;
    } else {
        return x.str(sig - 1, std::ios_base::scientific);
    }
}

std::string render_digits(bool negative, const std::string& digits, int exponent);

} // namespace detail

/// 15 significant digits. Magnitudes in [1e-3, 1e4) are printed in fixed
/// notation, everything else as 0.ddd...e+XX like the published tables.
template <class Real>
std::string format_number(const Real& x, int sig = 15)
{
    if (x == 0)
        return "0";
    if (!(x == x))
        return "nan";
    std::string sci = detail::scientific_string(x, sig);
    bool negative = sci[0] == '-';
    std::size_t pos = negative ? 1 : 0;
    if (sci.find_first_of("0123456789", pos) != pos)
        return sci; // inf
    std::string digits;
    std::size_t e = sci.find_first_of("eE");
    for (std::size_t i = pos; i < e; ++i)
        if (sci[i] != '.')
            digits += sci[i];
    int exponent = std::atoi(sci.c_str() + e + 1);
    return detail::render_digits(negative, digits, exponent);
}

} // namespace lagsum

#endif
