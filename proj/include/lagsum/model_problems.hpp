#ifndef LAGSUM_MODEL_PROBLEMS_HPP
#define LAGSUM_MODEL_PROBLEMS_HPP

// The alternating hypergeometric test series at z = -1 and the
// transformation tables built from their partial sums.

#include "lagsum/hypergeom.hpp"
#include "lagsum/seqtransform.hpp"

#include <cmath>
#include <algorithm>
#include <string>
#include <span>
#include <vector>

namespace lagsum {

/// 2F1(3/2+nu, 7/3+nu; 21/4+nu; -1)
template <class Real>
HypSeriesSpec<Real> model_2f1(unsigned nu)
{
    return {{Real(3) / 2, Real(7) / 3}, {Real(21) / 4}, Real(-1), nu};
}

/// 3F2(3/2+nu, 7/3+nu, 11/5+nu; 22/7+nu, 32/11+nu; -1)
template <class Real>
HypSeriesSpec<Real> model_3f2(unsigned nu)
{
    return {{Real(3) / 2, Real(7) / 3, Real(11) / 5}, {Real(22) / 7, Real(32) / 11}, Real(-1), nu};
}

/// 4F3(3/2+nu, 7/3+nu, 11/5+nu, 16/17+nu; 18/19+nu, 22/7+nu, 32/11+nu; -1)
template <class Real>
HypSeriesSpec<Real> model_4f3(unsigned nu)
{
    return {{Real(3) / 2, Real(7) / 3, Real(11) / 5, Real(16) / 17},
            {Real(18) / 19, Real(22) / 7, Real(32) / 11},
            Real(-1),
            nu};
}

/// Row n of a transformation table: epsilon on s_0..s_n, d and delta of
/// order n (which also consume s_{n+1}).
template <class Real>
struct TransformRow {
    unsigned n = 0;
    Real partial_sum = 0;
    Real epsilon = 0;
    Real levin_d = 0;
    Real delta = 0;
};

template <class Real>
std::vector<TransformRow<Real>> transform_rows(const HypSeriesSpec<Real>& spec, unsigned last_n,
                                               const PrecisionContext& ctx)
{
    auto sums = partial_sums(spec, last_n + 2);
    std::span<const Real> all(sums);
    std::vector<TransformRow<Real>> rows;
    const Real beta = 1;
    for (unsigned n = 0; n <= last_n; ++n) {
        TransformRow<Real> row;
        row.n = n;
        row.partial_sum = sums[n];
        row.epsilon = epsilon_best(all.first(n + 1), ctx).value;
        row.levin_d = d_transform(all.first(n + 2), beta, ctx).value;
        row.delta = delta_transform(all.first(n + 2), beta, ctx).value;
        rows.push_back(std::move(row));
    }
    return rows;
}

/// The three transforms at fixed orders: epsilon on s_0..s_{epsilon_last},
/// d and delta of order levin_order.
template <class Real>
struct InlineResult {
    SummationResult<Real> epsilon;
    SummationResult<Real> levin_d;
    SummationResult<Real> delta;
};

template <class Real>
InlineResult<Real> inline_results(const HypSeriesSpec<Real>& spec, unsigned epsilon_last, unsigned levin_order,
                                  const PrecisionContext& ctx)
{
    auto sums = partial_sums(spec, std::max(epsilon_last + 1, levin_order + 2));
    std::span<const Real> all(sums);
    const Real beta = 1;
    return {epsilon_best(all.first(epsilon_last + 1), ctx), d_transform(all.first(levin_order + 2), beta, ctx),
            delta_transform(all.first(levin_order + 2), beta, ctx)};
}

/// Reference value of a summable model series: delta transforms of growing
/// order in 100-digit arithmetic until two successive orders agree to 30
/// digits. Used where no continuation formula is available.
inline Real100 delta_reference(const HypSeriesSpec<Real100>& spec)
{
    using std::abs;
    const auto ctx = context_for<Real100>();
    const std::size_t cap = 200;
    auto sums = partial_sums(spec, cap);
    std::span<const Real100> all(sums);
    Real100 prev = delta_transform(all.first(32), Real100(1), ctx).value;
    for (std::size_t n = 40; n <= cap; n += 8) {
        Real100 cur = delta_transform(all.first(n), Real100(1), ctx).value;
        if (abs(cur - prev) <= Real100(1e-30) * abs(cur))
            return cur;
        prev = cur;
    }
    throw convergence_error("delta_reference: no stable value within " + std::to_string(cap) + " terms");
}

} // namespace lagsum

#endif
