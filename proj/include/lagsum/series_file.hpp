#ifndef LAGSUM_SERIES_FILE_HPP
#define LAGSUM_SERIES_FILE_HPP

#include "lagsum/analyzer.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lagsum {

/// Malformed or unreadable input.
class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Coefficient file contents with every number kept as its decimal text, so
/// that high-precision runs see the digits that were written.
///
///   {"alpha": 0, "coefficients": [1, -1, ...], "tail": "zero"|"strict"}
///   {"alpha": 0, "family": "alt_power", "params": {"rho": 0.5}}
///
/// Numbers may also be given as strings, including ratios such as "7/3".
struct SeriesFile {
    std::string alpha;
    std::vector<std::string> coefficients;
    std::optional<std::string> family;
    std::map<std::string, std::vector<std::string>> params; ///< scalars are one-element lists
    bool zero_tail = false;
};

SeriesFile parse_series_file(std::string_view text);
SeriesFile load_series_file(const std::filesystem::path& path);

namespace detail {

template <class Real>
Real parse_field(const std::string& text, const std::string& what)
{
    try {
        return parse_real<Real>(text);
    } catch (const std::exception& e) {
        throw input_error("invalid number for " + what + ": '" + text + "'");
    }
}

template <class Real>
Real scalar_param(const SeriesFile& file, const std::string& key)
{
    auto it = file.params.find(key);
    if (it == file.params.end())
        throw input_error("family '" + *file.family + "' needs parameter '" + key + "'");
    if (it->second.size() != 1)
        throw input_error("parameter '" + key + "' must be a single number");
    return parse_field<Real>(it->second.front(), key);
}

template <class Real>
std::vector<Real> list_param(const SeriesFile& file, const std::string& key)
{
    auto it = file.params.find(key);
    if (it == file.params.end())
        throw input_error("family '" + *file.family + "' needs parameter '" + key + "'");
    std::vector<Real> out;
    for (const auto& v : it->second)
        out.push_back(parse_field<Real>(v, key));
    return out;
}

} // namespace detail

/// Family from its CLI name and parameters.
template <class Real>
CoefficientFamily<Real> make_family(const SeriesFile& file, const Real& alpha)
{
    using detail::scalar_param;
    const std::string& name = *file.family;
    try {
        if (name == "power")
            return {Power<Real>{scalar_param<Real>(file, "rho")}, alpha};
        if (name == "alt_power")
            return {AltPower<Real>{scalar_param<Real>(file, "rho")}, alpha};
        if (name == "geometric")
            return {Geometric<Real>{scalar_param<Real>(file, "t")}, alpha};
        if (name == "geometric_power")
            return {GeometricPower<Real>{scalar_param<Real>(file, "rho"), scalar_param<Real>(file, "s")}, alpha};
        if (name == "factorial")
            return {Factorial<Real>{scalar_param<Real>(file, "s")}, alpha};
        if (name == "hyp_ratio")
            return {HypRatio<Real>{scalar_param<Real>(file, "a"), scalar_param<Real>(file, "b"),
                                   scalar_param<Real>(file, "c")},
                    alpha};
        if (name == "hyp_ratio_general")
            return {HypRatioGeneral<Real>{detail::list_param<Real>(file, "num"), detail::list_param<Real>(file, "den")},
                    alpha};
        if (name == "exp_power")
            return {ExpPower<Real>{scalar_param<Real>(file, "rho"), scalar_param<Real>(file, "u")}, alpha};
    } catch (const std::invalid_argument& e) {
        throw input_error(e.what());
    }
    throw input_error("unknown family '" + name + "'");
}

/// LaguerreSeries described by the file.
template <class Real>
LaguerreSeries<Real> make_series(const SeriesFile& file)
{
    Real alpha = detail::parse_field<Real>(file.alpha, "alpha");
    if (!(alpha > -1))
        throw input_error("alpha must exceed -1");
    if (file.family)
        return LaguerreSeries<Real>::from_family(make_family<Real>(file, alpha));
    std::vector<Real> coeffs;
    for (std::size_t i = 0; i < file.coefficients.size(); ++i)
        coeffs.push_back(detail::parse_field<Real>(file.coefficients[i], "coefficient " + std::to_string(i)));
    LaguerreParams<Real> params(alpha);
    if (file.zero_tail)
        return LaguerreSeries<Real>::zero_padded(FiniteLaguerreSum<Real>(params, std::move(coeffs)));
    try {
        return LaguerreSeries<Real>::explicit_list(params, std::move(coeffs));
    } catch (const std::invalid_argument& e) {
        throw input_error(std::string(e.what()) + " (use \"tail\": \"zero\" for a finite sum)");
    }
}

} // namespace lagsum

#endif
