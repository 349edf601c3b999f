#ifndef LAGSUM_HYPERGEOM_HPP
#define LAGSUM_HYPERGEOM_HPP

#include "lagsum/real.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lagsum {

/// Raised when a series that should converge did not within the term cap.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

template <class Real>
bool is_nonpositive_integer(const Real& x)
{
    using std::floor;
    return x <= 0 && floor(x) == x;
}

} // namespace detail

/// Generalized hypergeometric series p+1Fp(a_i + nu; b_j + nu; z) used as a
/// model problem for the divergent inner series.
template <class Real>
struct HypSeriesSpec {
    std::vector<Real> numerator_params;
    std::vector<Real> denominator_params;
    Real argument = 0;
    unsigned shift = 0;

    void validate() const
    {
        if (numerator_params.size() != denominator_params.size() + 1)
            throw std::invalid_argument("HypSeriesSpec: need p+1 numerator and p denominator parameters");
        for (const auto& b : denominator_params)
            if (detail::is_nonpositive_integer(Real(b + shift)))
                throw std::invalid_argument("HypSeriesSpec: shifted denominator parameter is a nonpositive integer");
    }
};

/// Partial sums s_0 ... s_{count-1} of the shifted series, terms built by
/// ratio updates.
template <class Real>
std::vector<Real> partial_sums(const HypSeriesSpec<Real>& spec, std::size_t count)
{
    spec.validate();
    if (count == 0)
        throw std::invalid_argument("partial_sums: count must be positive");
    std::vector<Real> out;
    out.reserve(count);
    Real term = 1;
    Real sum = 0;
    for (std::size_t k = 0; k < count; ++k) {
        sum += term;
        out.push_back(sum);
        Real ratio = spec.argument / Real(k + 1);
        for (const auto& a : spec.numerator_params)
            ratio *= a + spec.shift + k;
        for (const auto& b : spec.denominator_params)
            ratio /= b + spec.shift + k;
        term *= ratio;
    }
    return out;
}

/// Sums a pFq series directly, stopping once two consecutive terms fall below
/// 10^{-(d+2)} relative to the running sum. Throws convergence_error when the
/// cap on the number of terms is reached.
template <class Real>
Real direct_sum(const std::vector<Real>& num, const std::vector<Real>& den, const Real& z,
                const PrecisionContext& ctx, std::size_t max_terms = 100000)
{
    using std::abs;
    for (const auto& b : den)
        if (detail::is_nonpositive_integer(b))
            throw std::invalid_argument("direct_sum: denominator parameter is a nonpositive integer");
    const Real tol = ctx.tolerance<Real>(-2);
    Real term = 1;
    Real sum = 0;
    int small_run = 0;
    for (std::size_t k = 0; k < max_terms; ++k) {
        sum += term;
        if (abs(term) <= tol * abs(sum)) {
            if (++small_run == 2)
                return sum;
        } else {
            small_run = 0;
        }
        Real ratio = z / Real(k + 1);
        for (const auto& a : num)
            ratio *= a + k;
        for (const auto& b : den)
            ratio /= b + k;
        term *= ratio;
    }
    throw convergence_error("direct_sum: series did not converge within " + std::to_string(max_terms) + " terms");
}

/// Binomial series 1F0(a; z) = (1-z)^{-a}, continued to every z != 1.
template <class Real>
Real binomial_1F0(const Real& a, const Real& z)
{
    using std::pow;
    if (z == 1)
        throw std::domain_error("binomial_1F0: pole at z = 1");
    return pow(1 - z, -a);
}

/// Analytic-continuation routes for 2F1 at z in [-1, -1/2).
enum class ContinuationRoute {
    PfaffA, ///< (1-z)^{-a} 2F1(a, c-b; c; z/(z-1))
    PfaffB, ///< (1-z)^{-b} 2F1(c-a, b; c; z/(z-1))
    Euler,  ///< (1-z)^{c-a-b} 2F1(c-a, c-b; c; z), summed directly
};

/// 2F1(a, b; c; z) through an explicit route.
///
/// The Pfaff routes accept z in [-1, 0] and map it into [0, 1/2]. The Euler
/// route accepts z in [-1, 1/2] and only converges where the transformed
/// series does.
template <class Real>
Real gauss_2F1_route(const Real& a, const Real& b, const Real& c, const Real& z, ContinuationRoute route,
                     const PrecisionContext& ctx)
{
    using std::pow;
    if (detail::is_nonpositive_integer(c))
        throw std::invalid_argument("gauss_2F1: c is a nonpositive integer");
    switch (route) {
    case ContinuationRoute::PfaffA:
    case ContinuationRoute::PfaffB: {
        if (z < -1 || z > 0)
            throw std::out_of_range("gauss_2F1: Pfaff routes cover z in [-1, 0]");
        Real w = z / (z - 1);
        if (route == ContinuationRoute::PfaffA)
            return pow(1 - z, -a) * direct_sum<Real>({a, c - b}, {c}, w, ctx);
        return pow(1 - z, -b) * direct_sum<Real>({c - a, b}, {c}, w, ctx);
    }
    case ContinuationRoute::Euler:
        if (z < -1 || z > Real(0.5))
            throw std::out_of_range("gauss_2F1: Euler route covers z in [-1, 1/2]");
        return pow(1 - z, c - a - b) * direct_sum<Real>({c - a, c - b}, {c}, z, ctx);
    }
    throw std::logic_error("gauss_2F1: unknown route");
}

/// 2F1(a, b; c; z) for z in [-1, 1/2]: summed directly for |z| <= 1/2, and
/// through the Pfaff transformation z -> z/(z-1) below -1/2.
template <class Real>
Real gauss_2F1_at(const Real& a, const Real& b, const Real& c, const Real& z, const PrecisionContext& ctx)
{
    using std::abs;
    if (detail::is_nonpositive_integer(c))
        throw std::invalid_argument("gauss_2F1: c is a nonpositive integer");
    if (abs(z) <= Real(0.5))
        return direct_sum<Real>({a, b}, {c}, z, ctx);
    if (z >= -1 && z < 0)
        return gauss_2F1_route(a, b, c, z, ContinuationRoute::PfaffA, ctx);
    throw std::out_of_range("gauss_2F1: argument outside [-1, 1/2]");
}

/// Large-nu expansion of 2F1(a+nu, b+nu; c+nu; -1):
/// 2^{c-a-b-nu} sum_{n<terms} (-1)^n (c-a)_n (c-b)_n / ((c+nu)_n n!).
template <class Real>
Real large_nu_2F1_estimate(const Real& a, const Real& b, const Real& c, unsigned nu, unsigned terms)
{
    using std::pow;
    if (terms == 0 || terms > 3)
        throw std::invalid_argument("large_nu_2F1_estimate: 1 to 3 terms supported");
    Real sum = 0;
    Real term = 1;
    for (unsigned n = 0; n < terms; ++n) {
        sum += term;
        term *= -(c - a + n) * (c - b + n) / ((c + nu + n) * (n + 1));
    }
    return pow(Real(2), c - a - b - Real(nu)) * sum;
}

/// Kummer's 1F1(a; b; z) for |z| <= 50. Negative arguments go through
/// 1F1(a; b; z) = e^z 1F1(b-a; b; -z) so the summed terms keep one sign.
template <class Real>
Real kummer_1F1(const Real& a, const Real& b, const Real& z, const PrecisionContext& ctx)
{
    using std::abs;
    using std::exp;
    if (detail::is_nonpositive_integer(b))
        throw std::invalid_argument("kummer_1F1: b is a nonpositive integer");
    if (abs(z) > 50)
        throw std::out_of_range("kummer_1F1: |z| above 50 is outside the supported range");
    if (z < 0)
        return exp(z) * direct_sum<Real>({b - a}, {b}, -z, ctx);
    return direct_sum<Real>({a}, {b}, z, ctx);
}

/// 0F1(; b; z), summed directly.
template <class Real>
Real bessel_0F1(const Real& b, const Real& z, const PrecisionContext& ctx)
{
    return direct_sum<Real>({}, {b}, z, ctx);
}

} // namespace lagsum

#endif
