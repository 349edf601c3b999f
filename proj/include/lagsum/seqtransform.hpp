#ifndef LAGSUM_SEQTRANSFORM_HPP
#define LAGSUM_SEQTRANSFORM_HPP

#include "lagsum/real.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

namespace lagsum {

/// Triangular table indexed by (order k, start index n). Entries that could
/// not be formed (vanishing denominator, overflow, or a missing ancestor)
/// are empty.
template <class Real>
class TransformTable {
public:
    TransformTable() = default;

    /// Number of columns k = 0 .. orders()-1.
    std::size_t orders() const { return columns_.size(); }
    std::size_t column_size(std::size_t k) const { return k < columns_.size() ? columns_[k].size() : 0; }

    const std::optional<Real>& at(std::size_t k, std::size_t n) const
    {
        static const std::optional<Real> none;
        if (k >= columns_.size() || n >= columns_[k].size())
            return none;
        return columns_[k][n];
    }

    void push_column(std::vector<std::optional<Real>> column) { columns_.push_back(std::move(column)); }

private:
    std::vector<std::vector<std::optional<Real>>> columns_;
};

/// Epsilon table eps_k^(n), k >= 0. eps_{-1}^(n) = 0 is implicit.
/// Even columns are approximants, odd columns auxiliary.
template <class Real>
using EpsilonTable = TransformTable<Real>;

enum class SummationStatus { Converged, SummedDivergent, Unstable };

constexpr std::string_view to_string(SummationStatus s)
{
    switch (s) {
    case SummationStatus::Converged:
        return "Converged";
    case SummationStatus::SummedDivergent:
        return "SummedDivergent";
    case SummationStatus::Unstable:
        return "Unstable";
    }
    return "?";
}

template <class Real>
struct SummationResult {
    Real value = 0;
    std::size_t order_used = 0;
    Real stability = 0; ///< |highest-order approximant - next lower one|
    SummationStatus status = SummationStatus::Unstable;
};

/// Weights of the Levin-type family: powers (beta+n+j)^{k-1} for Levin's
/// transformation, Pochhammer symbols (beta+n+j)_{k-1} for Weniger's.
enum class LevinVariant { PowerWeights, PochhammerWeights };

namespace detail {

template <class Real>
void require_nonempty(std::span<const Real> seq)
{
    if (seq.empty())
        throw std::invalid_argument("sequence transformation: input sequence is empty");
}

/// True when the trailing increments are below 10^{-(d-4)} relative.
template <class Real>
bool is_cauchy(std::span<const Real> seq, const PrecisionContext& ctx)
{
    using std::abs;
    if (seq.size() < 2)
        return true;
    const Real tol = ctx.tolerance<Real>(4);
    const std::size_t checks = std::min<std::size_t>(3, seq.size() - 1);
    for (std::size_t i = 0; i < checks; ++i) {
        const Real& hi = seq[seq.size() - 1 - i];
        const Real& lo = seq[seq.size() - 2 - i];
        Real scale = std::max<Real>(abs(hi), abs(lo));
        if (abs(hi - lo) > tol * scale)
            return false;
    }
    return true;
}

/// True when the increments shrink in magnitude over the tail of the input,
/// i.e. the underlying series looks convergent.
template <class Real>
bool increments_shrinking(std::span<const Real> seq)
{
    using std::abs;
    if (seq.size() < 3)
        return false;
    const std::size_t last = seq.size() - 1;
    const std::size_t span = std::min<std::size_t>(4, last - 1);
    for (std::size_t i = 0; i < span; ++i) {
        Real newer = abs(seq[last - i] - seq[last - i - 1]);
        Real older = abs(seq[last - i - 1] - seq[last - i - 2]);
        if (!(newer < older))
            return false;
    }
    return true;
}

template <class Real>
SummationStatus classify_status(std::span<const Real> seq, const Real& value, const Real& stability, bool target_ok,
                                const PrecisionContext& ctx)
{
    using std::abs;
    if (is_cauchy(seq, ctx))
        return SummationStatus::Converged;
    if (!target_ok)
        return SummationStatus::Unstable;
    if (!(stability <= Real(1e-8) * abs(value)))
        return SummationStatus::Unstable;
    return increments_shrinking(seq) ? SummationStatus::Converged : SummationStatus::SummedDivergent;
}

template <class Real>
bool within_guard(const Real& x, const PrecisionContext& ctx)
{
    using std::abs;
    return is_finite(x) && abs(x) <= Real(ctx.divergence_guard);
}

} // namespace detail

/// Wynn's epsilon algorithm:
/// eps_{k+1}^(n) = eps_{k-1}^(n+1) + 1 / (eps_k^(n+1) - eps_k^(n)).
///
/// A difference below 10^{-(d-2)} max(|eps_k^(n+1)|, 1) marks the new entry
/// as missing, and every entry that needs it is pruned as well.
template <class Real>
EpsilonTable<Real> epsilon_table(std::span<const Real> seq, const PrecisionContext& ctx)
{
    using std::abs;
    detail::require_nonempty(seq);
    const Real guard = ctx.tolerance<Real>(2);
    EpsilonTable<Real> table;
    std::vector<std::optional<Real>> before(seq.size() + 1, Real(0)); // eps_{-1}
    std::vector<std::optional<Real>> current(seq.begin(), seq.end());
    table.push_column(current);
    while (current.size() > 1) {
        std::vector<std::optional<Real>> next(current.size() - 1);
        for (std::size_t n = 0; n + 1 < current.size(); ++n) {
            if (!current[n] || !current[n + 1] || !before[n + 1])
                continue;
            Real diff = *current[n + 1] - *current[n];
            if (abs(diff) < guard * std::max<Real>(abs(*current[n + 1]), Real(1)))
                continue;
            Real entry = *before[n + 1] + 1 / diff;
            if (detail::within_guard(entry, ctx))
                next[n] = std::move(entry);
        }
        before = std::move(current);
        current = std::move(next);
        table.push_column(current);
    }
    return table;
}

namespace detail {

/// Staircase target for m+1 elements: eps_{2 floor(m/2)}^{(m - 2 floor(m/2))}.
inline std::pair<std::size_t, std::size_t> epsilon_target(std::size_t m)
{
    std::size_t k = 2 * (m / 2);
    return {k, m - k};
}

template <class Real>
std::optional<std::pair<Real, std::size_t>> best_surviving_even(const EpsilonTable<Real>& table)
{
    for (std::size_t k = table.orders(); k-- > 0;) {
        if (k % 2 != 0)
            continue;
        for (std::size_t n = table.column_size(k); n-- > 0;)
            if (table.at(k, n))
                return std::pair<Real, std::size_t>(*table.at(k, n), k);
    }
    return std::nullopt;
}

} // namespace detail

/// Highest-order epsilon approximant for s_0..s_m.
template <class Real>
SummationResult<Real> epsilon_best(std::span<const Real> seq, const PrecisionContext& ctx)
{
    using std::abs;
    detail::require_nonempty(seq);
    const std::size_t m = seq.size() - 1;
    auto table = epsilon_table(seq, ctx);
    auto [k, n] = detail::epsilon_target(m);
    SummationResult<Real> result;
    const auto& target = table.at(k, n);
    if (target) {
        result.value = *target;
        result.order_used = k;
    } else {
        if (auto best = detail::best_surviving_even(table)) {
            result.value = best->first;
            result.order_used = best->second;
        } else {
            result.value = seq.back();
        }
    }
    if (m > 0) {
        auto [pk, pn] = detail::epsilon_target(m - 1);
        const auto& prev = table.at(pk, pn);
        result.stability = (target && prev) ? abs(*target - *prev) : Real(0);
        result.status = detail::classify_status<Real>(seq, result.value, result.stability, target && prev, ctx);
    } else {
        result.status = SummationStatus::Converged;
    }
    return result;
}

/// Table of Levin-type approximants entry(k, n) = N_k^(n) / D_k^(n), computed
/// with the numerator/denominator recursions started from u_n = s_n/omega_n
/// and u_n = 1/omega_n.
///
/// Power weights:      X_{k+1}^(n) = X_k^(n+1) - (beta+n)(beta+n+k)^{k-1} / (beta+n+k+1)^k X_k^(n)
/// Pochhammer weights: X_{k+1}^(n) = X_k^(n+1) - (beta+n+k-1)(beta+n+k) / ((beta+n+2k-1)(beta+n+2k)) X_k^(n)
template <class Real>
TransformTable<Real> levin_generic(std::span<const Real> seq, std::span<const Real> omegas, const Real& beta,
                                   LevinVariant variant, const PrecisionContext& ctx)
{
    using std::pow;
    detail::require_nonempty(seq);
    if (omegas.size() != seq.size())
        throw std::invalid_argument("levin_generic: need one remainder estimate per element");
    if (!(beta > 0))
        throw std::invalid_argument("levin_generic: beta must be positive");

    const std::size_t size = seq.size();
    std::vector<std::optional<Real>> num(size), den(size);
    for (std::size_t n = 0; n < size; ++n) {
        if (omegas[n] == 0 || !is_finite(omegas[n]))
            continue;
        num[n] = seq[n] / omegas[n];
        den[n] = 1 / omegas[n];
    }

    auto ratio_column = [&](const std::vector<std::optional<Real>>& nu, const std::vector<std::optional<Real>>& de) {
        std::vector<std::optional<Real>> col(nu.size());
        for (std::size_t n = 0; n < nu.size(); ++n) {
            if (!nu[n] || !de[n] || *de[n] == 0)
                continue;
            Real v = *nu[n] / *de[n];
            if (detail::within_guard(v, ctx))
                col[n] = std::move(v);
        }
        return col;
    };

    TransformTable<Real> table;
    table.push_column(ratio_column(num, den));
    for (std::size_t k = 0; k + 1 < size; ++k) {
        const std::size_t len = size - k - 1;
        std::vector<std::optional<Real>> next_num(len), next_den(len);
        for (std::size_t n = 0; n < len; ++n) {
            if (!num[n] || !num[n + 1] || !den[n] || !den[n + 1])
                continue;
            Real factor;
            const Real b = beta + Real(n);
            if (k == 0) {
                factor = 1;
            } else if (variant == LevinVariant::PowerWeights) {
                const int kk = static_cast<int>(k);
                factor = b * pow(Real(b + kk), kk - 1) / pow(Real(b + kk + 1), kk);
            } else {
                factor = (b + Real(k) - 1) * (b + Real(k)) / ((b + Real(2 * k) - 1) * (b + Real(2 * k)));
            }
            next_num[n] = *num[n + 1] - factor * *num[n];
            next_den[n] = *den[n + 1] - factor * *den[n];
        }
        num = std::move(next_num);
        den = std::move(next_den);
        table.push_column(ratio_column(num, den));
    }
    return table;
}

namespace detail {

template <class Real>
SummationResult<Real> levin_type_best(std::span<const Real> seq, const Real& beta, LevinVariant variant,
                                      const PrecisionContext& ctx)
{
    using std::abs;
    if (seq.size() < 2)
        throw std::invalid_argument("Levin-type transformation: need at least two elements");
    const std::size_t m = seq.size() - 2;
    std::span<const Real> used = seq.first(m + 1);

    SummationResult<Real> result;
    std::vector<Real> omegas(m + 1);
    bool stationary = true;
    for (std::size_t n = 0; n <= m; ++n) {
        omegas[n] = seq[n + 1] - seq[n];
        stationary = stationary && omegas[n] == 0;
    }
    if (stationary) {
        result.value = seq.back();
        result.status = SummationStatus::Converged;
        return result;
    }

    auto table = levin_generic<Real>(used, omegas, beta, variant, ctx);
    const auto& target = table.at(m, 0);
    const auto& prev = m > 0 ? table.at(m - 1, 0) : target;
    if (target) {
        result.value = *target;
        result.order_used = m;
    } else {
        // highest surviving order on the n = 0 diagonal
        std::size_t k = m;
        while (k > 0 && !table.at(k, 0))
            --k;
        result.value = table.at(k, 0).value_or(seq.back());
        result.order_used = k;
    }
    result.stability = (target && prev) ? abs(*target - *prev) : Real(0);
    result.status = detail::classify_status<Real>(seq, result.value, result.stability, target && prev, ctx);
    return result;
}

} // namespace detail

/// Levin's d transformation d_m^(0)(beta, s_0) with omega_n = s_{n+1} - s_n,
/// for s_0 .. s_{m+1}.
template <class Real>
SummationResult<Real> d_transform(std::span<const Real> seq, const Real& beta, const PrecisionContext& ctx)
{
    return detail::levin_type_best(seq, beta, LevinVariant::PowerWeights, ctx);
}

/// Weniger's delta transformation delta_m^(0)(beta, s_0) with
/// omega_n = s_{n+1} - s_n, for s_0 .. s_{m+1}.
template <class Real>
SummationResult<Real> delta_transform(std::span<const Real> seq, const Real& beta, const PrecisionContext& ctx)
{
    return detail::levin_type_best(seq, beta, LevinVariant::PochhammerWeights, ctx);
}

} // namespace lagsum

#endif
