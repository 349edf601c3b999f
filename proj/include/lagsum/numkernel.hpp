#ifndef LAGSUM_NUMKERNEL_HPP
#define LAGSUM_NUMKERNEL_HPP

#include "lagsum/real.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <stdexcept>

namespace lagsum {

/// ln Gamma(x) for real x > 0.
template <class Real>
Real ln_gamma(const Real& x)
{
    if (!(x > 0))
        throw std::domain_error("ln_gamma: argument must be positive");
    return boost::math::lgamma(x);
}

/// Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1.
///
/// Always a running product, so terminating cases such as (-3)_5 are exactly 0.
template <class Real>
Real pochhammer(const Real& a, unsigned n)
{
    Real p = 1;
    for (unsigned k = 0; k < n; ++k)
        p *= a + k;
    return p;
}

/// Gamma(z+a) / Gamma(z+b) for z+a > 0 and z+b > 0.
template <class Real>
Real gamma_ratio(const Real& a, const Real& b, const Real& z)
{
    using std::exp;
    return exp(ln_gamma<Real>(z + a) - ln_gamma<Real>(z + b));
}

} // namespace lagsum

#endif
