#ifndef LAGSUM_ANALYZER_HPP
#define LAGSUM_ANALYZER_HPP

#include "lagsum/coeff_families.hpp"
#include "lagsum/laguerre.hpp"
#include "lagsum/seqtransform.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace lagsum {

/// Requested operation is outside what the series' source supports.
class scope_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

enum class SignPattern { UltimatelyConstant, UltimatelyAlternating, Irregular };
enum class DecayKind { Algebraic, Exponential, Factorial, Undetermined };
enum class Regime { Analytic, AnalyticViaSummation, NotAnalyticAtOrigin, Undetermined };

std::string_view to_string(SignPattern p);
std::string_view to_string(DecayKind k);
std::string_view to_string(Regime r);

/// Decay class with its fitted parameter: beta-hat for Algebraic
/// (|lambda_n| ~ n^{-beta}), R-hat for Exponential (|lambda_n| ~ R^n), the
/// n ln n slope for Factorial, 0 when Undetermined.
struct DecayClass {
    DecayKind kind = DecayKind::Undetermined;
    double parameter = 0;
};

struct AnalyticityVerdict {
    SignPattern sign_pattern = SignPattern::Irregular;
    DecayClass decay;
    Regime regime = Regime::Undetermined;
    double fit_residual = 0; ///< rms of the chosen fit, natural-log units
};

/// Fits and the decision table on a window of (sign, ln|lambda_n|) pairs
/// starting at index first_index.
AnalyticityVerdict classify_log_tail(std::span<const std::pair<int, double>> tail, std::size_t first_index);

/// Laguerre coefficients lambda_n^(alpha), from an explicit list or a family.
template <class Real>
class LaguerreSeries {
public:
    static constexpr std::size_t min_explicit = 8;

    /// Explicit list; asking for lambda beyond the last entry is an error.
    static LaguerreSeries explicit_list(LaguerreParams<Real> params, std::vector<Real> coeffs)
    {
        if (coeffs.size() < min_explicit)
            throw std::invalid_argument("LaguerreSeries: explicit lists need at least 8 coefficients");
        return LaguerreSeries(std::move(params), std::move(coeffs), false);
    }

    /// A finite sum, continued with zeros beyond its degree.
    static LaguerreSeries zero_padded(const FiniteLaguerreSum<Real>& sum)
    {
        return LaguerreSeries(sum.params(), sum.coeffs(), true);
    }

    static LaguerreSeries from_family(CoefficientFamily<Real> family)
    {
        LaguerreParams<Real> params(family.alpha());
        return LaguerreSeries(std::move(params), std::move(family));
    }

    const LaguerreParams<Real>& params() const { return params_; }
    const CoefficientFamily<Real>* family() const { return std::get_if<CoefficientFamily<Real>>(&source_); }
    const std::vector<Real>* explicit_coefficients() const { return std::get_if<std::vector<Real>>(&source_); }
    bool zero_padding() const { return zero_padded_; }

    /// Number of coefficients that may be requested; nullopt when unbounded.
    std::optional<std::size_t> available() const
    {
        if (family() || zero_padded_)
            return std::nullopt;
        return explicit_coefficients()->size();
    }

    std::vector<Real> coefficients(unsigned first, unsigned count) const
    {
        if (const auto* f = family())
            return lagsum::coefficients(*f, first, count);
        const auto& list = *explicit_coefficients();
        if (!zero_padded_ && std::size_t(first) + count > list.size())
            throw std::out_of_range("LaguerreSeries: coefficient index beyond the explicit list");
        std::vector<Real> out(count, Real(0));
        for (unsigned i = 0; i < count && first + i < list.size(); ++i)
            out[i] = list[first + i];
        return out;
    }

    /// (sign, ln|lambda_n|) for n < count.
    std::vector<std::pair<int, double>> signed_logs(unsigned count) const
    {
        using std::abs;
        using std::log;
        if (const auto* f = family())
            return signed_log_coefficients(*f, count);
        auto values = coefficients(0, count);
        std::vector<std::pair<int, double>> out;
        out.reserve(count);
        for (const auto& v : values) {
            int sign = v > 0 ? 1 : (v < 0 ? -1 : 0);
            out.emplace_back(sign, sign == 0 ? 0.0 : static_cast<double>(log(abs(v))));
        }
        return out;
    }

private:
    LaguerreSeries(LaguerreParams<Real> params, std::vector<Real> coeffs, bool padded)
        : params_(std::move(params)), source_(std::move(coeffs)), zero_padded_(padded)
    {
    }
    LaguerreSeries(LaguerreParams<Real> params, CoefficientFamily<Real> family)
        : params_(std::move(params)), source_(std::move(family))
    {
    }

    LaguerreParams<Real> params_;
    std::variant<std::vector<Real>, CoefficientFamily<Real>> source_;
    bool zero_padded_ = false;
};

/// Default number of coefficients generated for classifying a family, and
/// the window taken from its end.
inline constexpr unsigned classify_generated = 256;
inline constexpr unsigned classify_window = 64;

/// Regime classification from the tail of the coefficients. A window of 0
/// selects the default: last 64 of 256 generated, or the last half of an
/// explicit list.
template <class Real>
AnalyticityVerdict classify(const LaguerreSeries<Real>& series, unsigned tail_window = 0)
{
    unsigned count;
    if (const auto* list = series.explicit_coefficients()) {
        count = static_cast<unsigned>(list->size());
        if (tail_window == 0)
            tail_window = count / 2;
        if (count < LaguerreSeries<Real>::min_explicit || tail_window > count)
            throw std::invalid_argument("classify: too few coefficients for the tail window");
    } else {
        if (tail_window == 0)
            tail_window = classify_window;
        count = std::max(classify_generated, tail_window);
    }
    if (tail_window < 3)
        throw std::invalid_argument("classify: tail window needs at least 3 coefficients");
    auto logs = series.signed_logs(count);
    std::span<const std::pair<int, double>> tail(logs.data() + (count - tail_window), tail_window);
    return classify_log_tail(tail, count - tail_window);
}

enum class SumMethod { Delta, LevinD, Epsilon };
enum class CoefficientStatus { ConvergedDirect, SummedDivergent, Failed };

std::string_view to_string(SumMethod m);
std::string_view to_string(CoefficientStatus s);

template <class Real>
struct PowerCoefficient {
    Real value = 0;
    CoefficientStatus status = CoefficientStatus::Failed;
    Real stability = 0;
};

template <class Real>
struct PowerSeriesResult {
    std::vector<PowerCoefficient<Real>> gammas;
    /// Absent for zero-padded lists too short to classify.
    std::optional<AnalyticityVerdict> verdict;
    bool exists = false; ///< no gamma_nu Failed
};

inline constexpr unsigned default_budget = 60;

namespace detail {

/// Same-sign terms whose magnitudes never decrease over the last half of the
/// inner series: monotone divergence, which no transformation can sum.
template <class Real>
bool monotone_divergent(const std::vector<Real>& terms)
{
    using std::abs;
    if (terms.size() < 8)
        return false;
    const std::size_t start = terms.size() / 2;
    const bool positive = terms[start] > 0;
    for (std::size_t i = start; i < terms.size(); ++i) {
        if (terms[i] == 0 || (terms[i] > 0) != positive)
            return false;
        if (i > start && abs(terms[i]) < abs(terms[i - 1]))
            return false;
    }
    return true;
}

} // namespace detail

/// Inner mu-series terms ((alpha+nu+1)_mu / mu!) lambda_{mu+nu}, mu < budget.
template <class Real>
std::vector<Real> inner_terms(const LaguerreSeries<Real>& series, unsigned nu, unsigned budget)
{
    if (budget == 0)
        throw std::invalid_argument("inner_terms: budget must be positive");
    const Real& alpha = series.params().alpha();
    auto lambda = series.coefficients(nu, budget);
    std::vector<Real> terms(budget);
    Real weight = 1;
    for (unsigned mu = 0; mu < budget; ++mu) {
        if (mu > 0)
            weight = weight * (alpha + nu + mu) / mu;
        terms[mu] = weight * lambda[mu];
    }
    return terms;
}

/// gamma_nu = ((-1)^nu / nu!) sum_mu ((alpha+nu+1)_mu / mu!) lambda_{mu+nu},
/// so that f(z) = sum gamma_nu z^nu. The inner series is summed directly when
/// its partial sums are Cauchy, otherwise with the chosen transformation.
template <class Real>
PowerCoefficient<Real> power_coefficient(const LaguerreSeries<Real>& series, unsigned nu, unsigned budget,
                                         SumMethod method, const PrecisionContext& ctx)
{
    auto terms = inner_terms(series, nu, budget);
    std::vector<Real> sums(terms.size());
    Real acc = 0;
    bool all_zero = true;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        acc += terms[i];
        sums[i] = acc;
        all_zero = all_zero && terms[i] == 0;
    }

    Real scale = 1;
    for (unsigned k = 2; k <= nu; ++k)
        scale *= k;
    scale = (nu % 2 == 0 ? Real(1) : Real(-1)) / scale;

    PowerCoefficient<Real> out;
    if (all_zero) {
        out.status = CoefficientStatus::ConvergedDirect;
        return out;
    }
    std::span<const Real> seq(sums);
    if (detail::is_cauchy(seq, ctx)) {
        out.value = scale * sums.back();
        out.status = CoefficientStatus::ConvergedDirect;
        return out;
    }

    SummationResult<Real> summed;
    if (method == SumMethod::Epsilon)
        summed = epsilon_best(seq, ctx);
    else if (sums.size() < 2)
        summed = SummationResult<Real>{sums.back(), 0, Real(0), SummationStatus::Unstable};
    else if (method == SumMethod::LevinD)
        summed = d_transform(seq, Real(1), ctx);
    else
        summed = delta_transform(seq, Real(1), ctx);

    using std::abs;
    out.value = scale * summed.value;
    out.stability = abs(scale) * summed.stability;
    if (detail::monotone_divergent(terms)) {
        out.status = CoefficientStatus::Failed;
        return out;
    }
    switch (summed.status) {
    case SummationStatus::Converged:
        out.status = CoefficientStatus::ConvergedDirect;
        break;
    case SummationStatus::SummedDivergent:
        out.status = CoefficientStatus::SummedDivergent;
        break;
    case SummationStatus::Unstable:
        out.status = CoefficientStatus::Failed;
        break;
    }
    return out;
}

/// gamma_0 .. gamma_{max_nu}, with the classification verdict attached when
/// the series has enough coefficients for one.
template <class Real>
PowerSeriesResult<Real> transform_to_power_series(const LaguerreSeries<Real>& series, unsigned max_nu, unsigned budget,
                                                  const PrecisionContext& ctx, SumMethod method = SumMethod::Delta)
{
    PowerSeriesResult<Real> result;
    result.exists = true;
    for (unsigned nu = 0; nu <= max_nu; ++nu) {
        result.gammas.push_back(power_coefficient(series, nu, budget, method, ctx));
        if (result.gammas.back().status == CoefficientStatus::Failed)
            result.exists = false;
    }
    const auto* list = series.explicit_coefficients();
    if (!list || list->size() >= LaguerreSeries<Real>::min_explicit)
        result.verdict = classify(series);
    return result;
}

template <class Real>
struct ClosedFormSample {
    Real z;
    Real series_value; ///< sum gamma_nu z^nu
    Real closed_value;
};

template <class Real>
struct ClosedFormReport {
    std::vector<ClosedFormSample<Real>> samples;
    Real max_relative_deviation = 0;
};

/// Compares sum gamma_nu z^nu with the family's closed form at each sample.
template <class Real>
ClosedFormReport<Real> verify_against_closed_form(const LaguerreSeries<Real>& series,
                                                  const PowerSeriesResult<Real>& result,
                                                  const std::vector<Real>& z_samples, const PrecisionContext& ctx)
{
    using std::abs;
    const auto* family = series.family();
    if (!family)
        throw scope_error("verify_against_closed_form: series has no coefficient family");
    ClosedFormReport<Real> report;
    for (const auto& z : z_samples) {
        auto closed = closed_form(*family, z, ctx);
        if (!closed)
            throw scope_error("verify_against_closed_form: family has no closed form");
        Real poly = 0;
        for (std::size_t i = result.gammas.size(); i-- > 0;)
            poly = poly * z + result.gammas[i].value;
        Real dev = *closed == 0 ? abs(poly) : abs(poly - *closed) / abs(*closed);
        if (dev > report.max_relative_deviation)
            report.max_relative_deviation = dev;
        report.samples.push_back({z, poly, *closed});
    }
    return report;
}

} // namespace lagsum

#endif
