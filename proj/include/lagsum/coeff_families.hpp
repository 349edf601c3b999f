#ifndef LAGSUM_COEFF_FAMILIES_HPP
#define LAGSUM_COEFF_FAMILIES_HPP

#include "lagsum/hypergeom.hpp"
#include "lagsum/numkernel.hpp"

#include <boost/math/special_functions/hypergeometric_1F1.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace lagsum {

// Laguerre coefficient families lambda_n^(alpha). Each kind names the
// function its Laguerre series represents.

/// z^rho: Gamma(rho+alpha+1)/Gamma(alpha+1) (-rho)_n / (alpha+1)_n.
template <class Real>
struct Power {
    Real rho;
};

/// Same as Power with an extra (-1)^n.
template <class Real>
struct AltPower {
    Real rho;
};

/// t^n, the generating function of the Laguerre polynomials.
template <class Real>
struct Geometric {
    Real t;
};

/// (-s)^n times the Power coefficient; reduces to Power as s -> -1.
template <class Real>
struct GeometricPower {
    Real rho;
    Real s;
};

/// s^n / (alpha+1)_n.
template <class Real>
struct Factorial {
    Real s;
};

/// (-1)^n (a)_n (b)_n / ((c)_n (alpha+1)_n).
template <class Real>
struct HypRatio {
    Real a;
    Real b;
    Real c;
};

/// (-1)^n prod (a_i)_n / (prod (b_j)_n (alpha+1)_n) with p+1 numerator and p
/// denominator parameters.
template <class Real>
struct HypRatioGeneral {
    std::vector<Real> num;
    std::vector<Real> den;
};

/// z^rho e^{uz}: (1-u)^{-alpha-rho-1} Gamma(alpha+rho+1)/Gamma(alpha+1)
/// 2F1(-n, alpha+rho+1; alpha+1; 1/(1-u)).
template <class Real>
struct ExpPower {
    Real rho;
    Real u;
};

/// Decay/sign regime of a family's coefficients.
enum class RegimeLabel { AlgebraicMonotone, AlgebraicAlternating, Exponential, Factorial };

constexpr std::string_view to_string(RegimeLabel r)
{
    switch (r) {
    case RegimeLabel::AlgebraicMonotone:
        return "AlgebraicMonotone";
    case RegimeLabel::AlgebraicAlternating:
        return "AlgebraicAlternating";
    case RegimeLabel::Exponential:
        return "Exponential";
    case RegimeLabel::Factorial:
        return "Factorial";
    }
    return "?";
}

namespace detail {

template <class Real>
bool is_nonnegative_integer(const Real& x)
{
    using std::floor;
    return x >= 0 && floor(x) == x;
}

template <class Real>
void check_power_params(const Real& rho, const Real& alpha)
{
    if (is_nonnegative_integer(rho))
        throw std::invalid_argument("coefficient family: rho must not be a nonnegative integer");
    if (!(alpha + 2 * rho > -1))
        throw std::invalid_argument("coefficient family: alpha + 2 rho must exceed -1");
}

} // namespace detail

template <class Real>
class CoefficientFamily {
public:
    using Kind = std::variant<Power<Real>, AltPower<Real>, Geometric<Real>, GeometricPower<Real>, Factorial<Real>,
                              HypRatio<Real>, HypRatioGeneral<Real>, ExpPower<Real>>;

    CoefficientFamily(Kind kind, Real alpha) : kind_(std::move(kind)), alpha_(std::move(alpha))
    {
        if (!(alpha_ > -1))
            throw std::invalid_argument("coefficient family: alpha must exceed -1");
        std::visit([this](const auto& k) { validate(k); }, kind_);
    }

    const Kind& kind() const { return kind_; }
    const Real& alpha() const { return alpha_; }

    std::string_view name() const
    {
        constexpr std::string_view names[] = {"power",     "alt_power", "geometric",         "geometric_power",
                                              "factorial", "hyp_ratio", "hyp_ratio_general", "exp_power"};
        return names[kind_.index()];
    }

private:
    void validate(const Power<Real>& k) const { detail::check_power_params(k.rho, alpha_); }
    void validate(const AltPower<Real>& k) const { detail::check_power_params(k.rho, alpha_); }
    void validate(const Geometric<Real>& k) const
    {
        using std::abs;
        if (!(abs(k.t) < 1))
            throw std::invalid_argument("geometric family: |t| < 1 required");
    }
    void validate(const GeometricPower<Real>& k) const
    {
        using std::abs;
        detail::check_power_params(k.rho, alpha_);
        if (!(abs(k.s) < 1))
            throw std::invalid_argument("geometric power family: |s| < 1 required");
    }
    void validate(const Factorial<Real>&) const {}
    void validate(const HypRatio<Real>& k) const
    {
        for (const Real* p : {&k.a, &k.b, &k.c})
            if (detail::is_nonpositive_integer(*p))
                throw std::invalid_argument("hypergeometric ratio family: -a, -b, -c must not be nonnegative integers");
        if (!(k.c - k.a - k.b + (alpha_ + 1) / 2 > 0))
            throw std::invalid_argument("hypergeometric ratio family: c - a - b + (alpha+1)/2 > 0 required");
    }
    void validate(const HypRatioGeneral<Real>& k) const
    {
        if (k.num.size() != k.den.size() + 1)
            throw std::invalid_argument("general hypergeometric ratio family: need p+1 numerator and p denominator parameters");
        Real balance = (alpha_ + 1) / 2;
        for (const auto& a : k.num) {
            if (detail::is_nonpositive_integer(a))
                throw std::invalid_argument("general hypergeometric ratio family: numerator parameter is a nonpositive integer");
            balance -= a;
        }
        for (const auto& b : k.den) {
            if (detail::is_nonpositive_integer(b))
                throw std::invalid_argument("general hypergeometric ratio family: denominator parameter is a nonpositive integer");
            balance += b;
        }
        if (!(balance > 0))
            throw std::invalid_argument("general hypergeometric ratio family: series does not converge in the mean");
    }
    void validate(const ExpPower<Real>& k) const
    {
        if (detail::is_nonnegative_integer(k.rho))
            throw std::invalid_argument("exponential power family: rho must not be a nonnegative integer");
        if (!(k.rho + alpha_ > -1))
            throw std::invalid_argument("exponential power family: rho + alpha must exceed -1");
        if (!(k.u < Real(0.5)))
            throw std::invalid_argument("exponential power family: u < 1/2 required");
    }

    Kind kind_;
    Real alpha_;
};

namespace detail {

/// Extended precision for the terminating 2F1 of the ExpPower family, whose
/// terms reach (1+x)^n before cancelling down to O(n^{-alpha-rho-1}).
using GuardReal = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<400>>;

template <class Real>
GuardReal to_guard(const Real& x)
{
    return GuardReal(x);
}

template <class Real>
Real from_guard(const GuardReal& x)
{
    return x.template convert_to<Real>();
}

template <class Real>
GuardReal exp_power_guarded(const ExpPower<Real>& k, const Real& alpha, unsigned n)
{
    using std::abs;
    using std::log10;
    using std::pow;
    const GuardReal a = to_guard(alpha);
    const GuardReal rho = to_guard(k.rho);
    const GuardReal x = 1 / (1 - to_guard(k.u));
    const double magnitude = n * std::log10(1 + abs(x.template convert_to<double>())) + 2 * std::log10(n + 2.0);
    if (magnitude > std::numeric_limits<GuardReal>::digits10 - 120)
        throw std::out_of_range("exp_power coefficient: index too large for the guarded terminating sum");
    GuardReal term = 1;
    GuardReal sum = 1;
    for (unsigned j = 0; j < n; ++j) {
        term *= (GuardReal(j) - n) * (a + rho + 1 + j) / ((a + 1 + j) * (j + 1)) * x;
        sum += term;
    }
    GuardReal prefactor = pow(1 - to_guard(k.u), -a - rho - 1) * boost::math::tgamma(a + rho + 1) / boost::math::tgamma(a + 1);
    return prefactor * sum;
}

template <class Real>
Real power_prefactor(const Real& rho, const Real& alpha)
{
    return gamma_ratio<Real>(rho, Real(0), alpha + 1);
}

/// lambda_0 and the ratio lambda_{n+1}/lambda_n for every kind except ExpPower.
template <class Real>
struct RatioForm {
    Real lead;
    std::function<Real(unsigned)> ratio;
};

template <class Real>
RatioForm<Real> ratio_form(const CoefficientFamily<Real>& family)
{
    const Real alpha = family.alpha();
    return std::visit(
        [&](const auto& k) -> RatioForm<Real> {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Power<Real>>) {
                return {power_prefactor(k.rho, alpha), [rho = k.rho, alpha](unsigned n) {
                            return Real((n - rho) / (alpha + 1 + n));
                        }};
            } else if constexpr (std::is_same_v<K, AltPower<Real>>) {
                return {power_prefactor(k.rho, alpha), [rho = k.rho, alpha](unsigned n) {
                            return Real(-(n - rho) / (alpha + 1 + n));
                        }};
            } else if constexpr (std::is_same_v<K, Geometric<Real>>) {
                return {Real(1), [t = k.t](unsigned) { return t; }};
            } else if constexpr (std::is_same_v<K, GeometricPower<Real>>) {
                return {power_prefactor(k.rho, alpha), [rho = k.rho, s = k.s, alpha](unsigned n) {
                            return Real(-s * (n - rho) / (alpha + 1 + n));
                        }};
            } else if constexpr (std::is_same_v<K, Factorial<Real>>) {
                return {Real(1), [s = k.s, alpha](unsigned n) { return Real(s / (alpha + 1 + n)); }};
            } else if constexpr (std::is_same_v<K, HypRatio<Real>>) {
                return {Real(1), [k, alpha](unsigned n) {
                            return Real(-(k.a + n) * (k.b + n) / ((k.c + n) * (alpha + 1 + n)));
                        }};
            } else if constexpr (std::is_same_v<K, HypRatioGeneral<Real>>) {
                return {Real(1), [k, alpha](unsigned n) {
                            Real r = -1 / (alpha + 1 + n);
                            for (const auto& a : k.num)
                                r *= a + n;
                            for (const auto& b : k.den)
                                r /= b + n;
                            return r;
                        }};
            } else {
                throw std::logic_error("ratio_form: family has no ratio form");
            }
        },
        family.kind());
}

} // namespace detail

/// lambda_n^(alpha) for the family.
template <class Real>
Real coefficient(const CoefficientFamily<Real>& family, unsigned n)
{
    if (const auto* k = std::get_if<ExpPower<Real>>(&family.kind()))
        return detail::from_guard<Real>(detail::exp_power_guarded(*k, family.alpha(), n));
    auto form = detail::ratio_form(family);
    Real value = form.lead;
    for (unsigned j = 0; j < n && value != 0; ++j)
        value *= form.ratio(j);
    return value;
}

/// lambda_first ... lambda_{first+count-1}.
template <class Real>
std::vector<Real> coefficients(const CoefficientFamily<Real>& family, unsigned first, unsigned count)
{
    std::vector<Real> out;
    out.reserve(count);
    if (std::holds_alternative<ExpPower<Real>>(family.kind())) {
        for (unsigned n = first; n < first + count; ++n)
            out.push_back(coefficient(family, n));
        return out;
    }
    auto form = detail::ratio_form(family);
    Real value = form.lead;
    for (unsigned j = 0; j < first + count; ++j) {
        if (j >= first)
            out.push_back(value);
        value *= form.ratio(j);
    }
    return out;
}

/// Sign and natural log of |lambda_n| for n < count, safe against underflow of
/// factorially decaying coefficients. Zero coefficients have sign 0.
template <class Real>
std::vector<std::pair<int, double>> signed_log_coefficients(const CoefficientFamily<Real>& family, unsigned count)
{
    using std::abs;
    using std::log;
    std::vector<std::pair<int, double>> out;
    out.reserve(count);
    auto sign_of = [](const auto& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
    if (const auto* k = std::get_if<ExpPower<Real>>(&family.kind())) {
        for (unsigned n = 0; n < count; ++n) {
            auto v = detail::exp_power_guarded(*k, family.alpha(), n);
            int sg = sign_of(v);
            out.emplace_back(sg, sg == 0 ? 0.0 : static_cast<double>(log(abs(v))));
        }
        return out;
    }
    auto form = detail::ratio_form(family);
    int sign = sign_of(form.lead);
    Real log_mag = sign == 0 ? Real(0) : Real(log(abs(form.lead)));
    for (unsigned n = 0; n < count; ++n) {
        out.emplace_back(sign, sign == 0 ? 0.0 : static_cast<double>(log_mag));
        if (sign == 0)
            continue;
        Real r = form.ratio(n);
        sign *= sign_of(r);
        if (sign != 0)
            log_mag += log(abs(r));
    }
    return out;
}

/// Regime predicted by the analysis of each family.
template <class Real>
RegimeLabel expected_regime(const CoefficientFamily<Real>& family)
{
    return std::visit(
        [](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Power<Real>> || std::is_same_v<K, ExpPower<Real>>)
                return RegimeLabel::AlgebraicMonotone;
            else if constexpr (std::is_same_v<K, AltPower<Real>> || std::is_same_v<K, HypRatio<Real>> ||
                               std::is_same_v<K, HypRatioGeneral<Real>>)
                return RegimeLabel::AlgebraicAlternating;
            else if constexpr (std::is_same_v<K, Geometric<Real>> || std::is_same_v<K, GeometricPower<Real>>)
                return RegimeLabel::Exponential;
            else
                return RegimeLabel::Factorial;
        },
        family.kind());
}

namespace detail {

/// 1F1 for closed forms. Beyond the summation range of kummer_1F1 (reached
/// by GeometricPower as s -> -1) the library evaluator takes over.
template <class Real>
Real confluent_1F1(const Real& a, const Real& b, const Real& x, const PrecisionContext& ctx)
{
    using std::abs;
    if (abs(x) <= 50)
        return kummer_1F1<Real>(a, b, x, ctx);
    return boost::math::hypergeometric_1F1(a, b, x);
}

/// 2^{-a} sum_nu 2F1(a+nu, c-b; c+nu; 1/2) (a)_nu (b)_nu / ((c)_nu nu!) (z/2)^nu / (alpha+1)_nu
template <class Real>
Real hyp_ratio_closed_form(const Real& a, const Real& b, const Real& c, const Real& alpha, const Real& z,
                           const PrecisionContext& ctx)
{
    using std::abs;
    using std::pow;
    const Real tol = ctx.tolerance<Real>(-2);
    const Real half(0.5);
    Real weight = 1;
    Real sum = 0;
    int small_run = 0;
    for (unsigned nu = 0; nu < 10000; ++nu) {
        Real term = weight * gauss_2F1_at<Real>(a + nu, c - b, c + nu, half, ctx);
        sum += term;
        if (abs(term) <= tol * abs(sum)) {
            if (++small_run == 2)
                return pow(Real(2), -a) * sum;
        } else {
            small_run = 0;
        }
        weight *= (a + nu) * (b + nu) / ((c + nu) * (nu + 1) * (alpha + 1 + nu)) * z / 2;
    }
    throw convergence_error("hypergeometric ratio closed form did not converge");
}

} // namespace detail

/// Closed form of the function represented by the family's Laguerre series,
/// or nullopt where none is available (ExpPower, HypRatioGeneral with p >= 2).
/// For Power the value z^rho is a reference target only.
template <class Real>
std::optional<Real> closed_form(const CoefficientFamily<Real>& family, const Real& z, const PrecisionContext& ctx)
{
    using std::exp;
    using std::pow;
    const Real& alpha = family.alpha();
    return std::visit(
        [&](const auto& k) -> std::optional<Real> {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Power<Real>>) {
                if (z < 0)
                    throw std::domain_error("closed_form: z^rho needs z >= 0");
                return pow(z, k.rho);
            } else if constexpr (std::is_same_v<K, AltPower<Real>>) {
                return pow(Real(2), k.rho) * detail::power_prefactor(k.rho, alpha) *
                       detail::confluent_1F1<Real>(-k.rho, alpha + 1, z / 2, ctx);
            } else if constexpr (std::is_same_v<K, Geometric<Real>>) {
                return pow(1 - k.t, -alpha - 1) * exp(z * k.t / (k.t - 1));
            } else if constexpr (std::is_same_v<K, GeometricPower<Real>>) {
                return pow(1 + k.s, k.rho) * detail::power_prefactor(k.rho, alpha) *
                       detail::confluent_1F1<Real>(-k.rho, alpha + 1, k.s * z / (1 + k.s), ctx);
            } else if constexpr (std::is_same_v<K, Factorial<Real>>) {
                return exp(k.s) * bessel_0F1<Real>(alpha + 1, -k.s * z, ctx);
            } else if constexpr (std::is_same_v<K, HypRatio<Real>>) {
                return detail::hyp_ratio_closed_form(k.a, k.b, k.c, alpha, z, ctx);
            } else if constexpr (std::is_same_v<K, HypRatioGeneral<Real>>) {
                if (k.den.empty())
                    return pow(Real(2), -k.num[0]) * detail::confluent_1F1<Real>(k.num[0], alpha + 1, z / 2, ctx);
                if (k.den.size() == 1)
                    return detail::hyp_ratio_closed_form(k.num[0], k.num[1], k.den[0], alpha, z, ctx);
                return std::nullopt;
            } else {
                return std::nullopt;
            }
        },
        family.kind());
}

} // namespace lagsum

#endif
