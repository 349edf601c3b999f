#ifndef LAGSUM_REAL_HPP
#define LAGSUM_REAL_HPP

#include <boost/math/special_functions/fpclassify.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lagsum {

/// Software floating point types backing the high-precision mode.
using Real50 = boost::multiprecision::cpp_bin_float_50;
using Real100 = boost::multiprecision::cpp_bin_float_100;

/// Nominal number of significant decimal digits carried by a scalar type.
template <class Real>
constexpr int nominal_digits()
{
    if constexpr (std::is_same_v<Real, double>)
        return 16;
    else
        return std::numeric_limits<Real>::digits10;
}

/// Working precision of one computation.
///
/// Every numerical routine takes the context explicitly; there is no
/// process-wide precision setting. `digits` drives the convergence and
/// breakdown thresholds, the scalar type drives the arithmetic.
struct PrecisionContext {
    int digits = 16;
    double divergence_guard = 1e300;

    PrecisionContext() = default;
    explicit PrecisionContext(int d, double guard = 1e300) : digits(d), divergence_guard(guard)
    {
        if (d < 15)
            throw std::invalid_argument("PrecisionContext: at least 15 significant digits required");
        if (!(guard > 0))
            throw std::invalid_argument("PrecisionContext: divergence guard must be positive");
    }

    /// 10^(-(digits - k)), the family of tolerances used throughout.
    template <class Real>
    Real tolerance(int k) const
    {
        using std::pow;
        return pow(Real(10), -(digits - k));
    }
};

/// Context matching the full precision of `Real`.
template <class Real>
PrecisionContext context_for()
{
    return PrecisionContext(nominal_digits<Real>());
}

namespace detail {

template <class Real>
Real parse_decimal(std::string_view text)
{
    std::string s(text);
    if (s.empty())
        throw std::invalid_argument("empty number");
    if constexpr (std::is_same_v<Real, double>) {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size())
            throw std::invalid_argument("malformed number: " + s);
        return v;
    } else {
        // boost::multiprecision throws std::runtime_error on bad input
        try {
            return Real(s);
        } catch (const std::runtime_error&) {
            throw std::invalid_argument("malformed number: " + s);
        }
    }
}

} // namespace detail

/// Parses a decimal number or an exact ratio "p/q" at the precision of `Real`.
///
/// Ratios are divided in working precision, so "7/3" is as accurate as the
/// type allows while "2.3333333333333333" is not.
template <class Real>
Real parse_real(std::string_view text)
{
    auto trim = [](std::string_view v) {
        while (!v.empty() && (v.front() == ' ' || v.front() == '\t'))
            v.remove_prefix(1);
        while (!v.empty() && (v.back() == ' ' || v.back() == '\t'))
            v.remove_suffix(1);
        return v;
    };
    text = trim(text);
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return detail::parse_decimal<Real>(text);
    Real num = detail::parse_decimal<Real>(trim(text.substr(0, slash)));
    Real den = detail::parse_decimal<Real>(trim(text.substr(slash + 1)));
    if (den == 0)
        throw std::invalid_argument("zero denominator in ratio: " + std::string(text));
    return num / den;
}

template <class Real>
bool is_finite(const Real& x)
{
    return (boost::math::isfinite)(x);
}

} // namespace lagsum

#endif
