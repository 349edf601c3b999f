#ifndef LAGSUM_LAGUERRE_HPP
#define LAGSUM_LAGUERRE_HPP

#include "lagsum/numkernel.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lagsum {

/// Superscript alpha of the generalized Laguerre polynomials, alpha > -1.
///
/// The orthogonality weight is z^alpha e^{-z} on [0, inf).
template <class Real>
class LaguerreParams {
public:
    explicit LaguerreParams(Real alpha) : alpha_(std::move(alpha))
    {
        if (!(alpha_ > -1))
            throw std::invalid_argument("LaguerreParams: alpha must exceed -1");
    }

    const Real& alpha() const { return alpha_; }

private:
    Real alpha_;
};

/// Partial sum f_N(z) = sum_{n<=N} lambda_n L_n^(alpha)(z).
template <class Real>
class FiniteLaguerreSum {
public:
    FiniteLaguerreSum(LaguerreParams<Real> params, std::vector<Real> coeffs)
        : params_(std::move(params)), coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty())
            throw std::invalid_argument("FiniteLaguerreSum: coefficient list is empty");
    }

    const LaguerreParams<Real>& params() const { return params_; }
    const std::vector<Real>& coeffs() const { return coeffs_; }
    std::size_t degree() const { return coeffs_.size() - 1; }

private:
    LaguerreParams<Real> params_;
    std::vector<Real> coeffs_;
};

/// L_n^(alpha)(z) by the three-term recurrence
/// (k+1) L_{k+1} = (2k + alpha + 1 - z) L_k - (k + alpha) L_{k-1}.
template <class Real>
Real laguerre_eval(const LaguerreParams<Real>& params, unsigned n, const Real& z)
{
    const Real& alpha = params.alpha();
    Real prev = 1;
    if (n == 0)
        return prev;
    Real cur = alpha + 1 - z;
    for (unsigned k = 1; k < n; ++k) {
        Real next = ((2 * k + alpha + 1 - z) * cur - (k + alpha) * prev) / (k + 1);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Direct evaluation of f_N(z) with the recurrence carried along the sum.
template <class Real>
Real laguerre_sum_eval(const FiniteLaguerreSum<Real>& sum, const Real& z)
{
    const Real& alpha = sum.params().alpha();
    const auto& lambda = sum.coeffs();
    Real prev = 1;
    Real total = lambda[0];
    if (lambda.size() == 1)
        return total;
    Real cur = alpha + 1 - z;
    total += lambda[1] * cur;
    for (std::size_t k = 1; k + 1 < lambda.size(); ++k) {
        Real next = ((2 * k + alpha + 1 - z) * cur - (k + alpha) * prev) / (k + 1);
        prev = std::move(cur);
        cur = std::move(next);
        total += lambda[k + 1] * cur;
    }
    return total;
}

/// C_n = [Gamma(alpha+n+1)/n!]^{1/2} lambda_n, the coefficient with respect
/// to the orthonormal Laguerre functions.
template <class Real>
Real normalized_coefficient(const LaguerreParams<Real>& params, unsigned n, const Real& lambda_n)
{
    using std::exp;
    const Real& alpha = params.alpha();
    Real log_norm = ln_gamma<Real>(alpha + n + 1) - ln_gamma<Real>(Real(n + 1));
    return exp(log_norm / 2) * lambda_n;
}

/// Truncated weighted norm {sum Gamma(alpha+n+1)/n! |lambda_n|^2}^{1/2}.
template <class Real>
Real norm_estimate(const FiniteLaguerreSum<Real>& sum)
{
    using std::sqrt;
    Real acc = 0;
    const auto& lambda = sum.coeffs();
    for (unsigned n = 0; n < lambda.size(); ++n) {
        Real c = normalized_coefficient(sum.params(), n, lambda[n]);
        acc += c * c;
    }
    return sqrt(acc);
}

/// Power-series coefficients of a finite Laguerre sum:
/// c_nu = ((-1)^nu / nu!) sum_{mu=0}^{N-nu} ((alpha+nu+1)_mu / mu!) lambda_{mu+nu},
/// so that sum c_nu z^nu reproduces f_N(z) identically.
template <class Real>
std::vector<Real> finite_rearrange(const FiniteLaguerreSum<Real>& sum)
{
    const Real& alpha = sum.params().alpha();
    const auto& lambda = sum.coeffs();
    const std::size_t size = lambda.size();
    std::vector<Real> out(size);
    Real nu_factorial = 1;
    for (std::size_t nu = 0; nu < size; ++nu) {
        if (nu > 0)
            nu_factorial *= Real(nu);
        Real weight = 1; // (alpha+nu+1)_mu / mu!
        Real inner = 0;
        for (std::size_t mu = 0; mu + nu < size; ++mu) {
            if (mu > 0)
                weight = weight * (alpha + nu + mu) / mu;
            inner += weight * lambda[mu + nu];
        }
        out[nu] = (nu % 2 == 0 ? inner : -inner) / nu_factorial;
    }
    return out;
}

/// Monomial coefficients of L_n^(alpha): ((alpha+1)_n/n!) (-n)_k / ((alpha+1)_k k!).
template <class Real>
std::vector<Real> laguerre_monomials(const LaguerreParams<Real>& params, unsigned n)
{
    const Real& alpha = params.alpha();
    std::vector<Real> c(n + 1);
    // leading factor (alpha+1)_n / n!
    Real lead = 1;
    for (unsigned k = 0; k < n; ++k)
        lead = lead * (alpha + 1 + k) / (k + 1);
    c[0] = lead;
    for (unsigned k = 0; k < n; ++k)
        c[k + 1] = c[k] * (Real(k) - Real(n)) / ((alpha + 1 + k) * (k + 1));
    return c;
}

/// Weighted inner product of L_m and L_n, integrated in closed form.
///
/// Both polynomials are expanded in monomials and each product term is
/// integrated with int_0^inf z^{alpha+k} e^{-z} dz = Gamma(alpha+k+1).
/// The result equals delta_{mn} Gamma(alpha+n+1)/n!.
template <class Real>
Real orthogonality_check(const LaguerreParams<Real>& params, unsigned m, unsigned n)
{
    if (m > 30 || n > 30)
        throw std::out_of_range("orthogonality_check: degrees above 30 are not supported");
    const Real& alpha = params.alpha();
    auto cm = laguerre_monomials(params, m);
    auto cn = laguerre_monomials(params, n);
    // moments Gamma(alpha+k+1) = Gamma(alpha+1) (alpha+1)_k
    std::vector<Real> moment(m + n + 1);
    moment[0] = boost::math::tgamma(alpha + 1);
    for (unsigned k = 1; k <= m + n; ++k)
        moment[k] = moment[k - 1] * (alpha + k);
    Real acc = 0;
    for (unsigned i = 0; i <= m; ++i)
        for (unsigned j = 0; j <= n; ++j)
            acc += cm[i] * cn[j] * moment[i + j];
    return acc;
}

} // namespace lagsum

#endif
