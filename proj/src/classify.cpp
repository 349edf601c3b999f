#include "lagsum/analyzer.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

namespace lagsum {

std::string_view to_string(SignPattern p)
{
    switch (p) {
    case SignPattern::UltimatelyConstant:
        return "UltimatelyConstant";
    case SignPattern::UltimatelyAlternating:
        return "UltimatelyAlternating";
    case SignPattern::Irregular:
        return "Irregular";
    }
    return "?";
}

std::string_view to_string(DecayKind k)
{
    switch (k) {
    case DecayKind::Algebraic:
        return "Algebraic";
    case DecayKind::Exponential:
        return "Exponential";
    case DecayKind::Factorial:
        return "Factorial";
    case DecayKind::Undetermined:
        return "Undetermined";
    }
    return "?";
}

std::string_view to_string(Regime r)
{
    switch (r) {
    case Regime::Analytic:
        return "Analytic";
    case Regime::AnalyticViaSummation:
        return "AnalyticViaSummation";
    case Regime::NotAnalyticAtOrigin:
        return "NotAnalyticAtOrigin";
    case Regime::Undetermined:
        return "Undetermined";
    }
    return "?";
}

std::string_view to_string(SumMethod m)
{
    switch (m) {
    case SumMethod::Delta:
        return "delta";
    case SumMethod::LevinD:
        return "levin_d";
    case SumMethod::Epsilon:
        return "epsilon";
    }
    return "?";
}

std::string_view to_string(CoefficientStatus s)
{
    switch (s) {
    case CoefficientStatus::ConvergedDirect:
        return "ConvergedDirect";
    case CoefficientStatus::SummedDivergent:
        return "SummedDivergent";
    case CoefficientStatus::Failed:
        return "Failed";
    }
    return "?";
}

namespace {

constexpr double residual_threshold = 0.1;

struct Fit {
    Eigen::VectorXd coef;
    double rms = std::numeric_limits<double>::infinity();
};

Fit least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& y)
{
    Fit fit;
    fit.coef = design.colPivHouseholderQr().solve(y);
    fit.rms = std::sqrt((design * fit.coef - y).squaredNorm() / double(y.size()));
    return fit;
}

SignPattern sign_pattern(std::span<const std::pair<int, double>> tail)
{
    bool constant = true;
    bool alternating = true;
    for (std::size_t i = 0; i < tail.size(); ++i) {
        if (tail[i].first == 0)
            return SignPattern::Irregular;
        if (i > 0) {
            constant = constant && tail[i].first == tail[i - 1].first;
            alternating = alternating && tail[i].first == -tail[i - 1].first;
        }
    }
    if (constant)
        return SignPattern::UltimatelyConstant;
    return alternating ? SignPattern::UltimatelyAlternating : SignPattern::Irregular;
}

} // namespace

AnalyticityVerdict classify_log_tail(std::span<const std::pair<int, double>> tail, std::size_t first_index)
{
    AnalyticityVerdict verdict;
    verdict.sign_pattern = sign_pattern(tail);

    // Points with n = 0 carry no information for the ln n fit; zero
    // coefficients have no logarithm.
    std::vector<double> ns, ys;
    bool has_zero = false;
    for (std::size_t i = 0; i < tail.size(); ++i) {
        const std::size_t n = first_index + i;
        if (tail[i].first == 0)
            has_zero = true;
        else if (n > 0) {
            ns.push_back(double(n));
            ys.push_back(tail[i].second);
        }
    }
    if (has_zero || ns.size() < 3)
        return verdict;

    const Eigen::Index m = Eigen::Index(ns.size());
    Eigen::VectorXd y = Eigen::Map<Eigen::VectorXd>(ys.data(), m);
    Eigen::MatrixXd a(m, 2), b(m, 2), c(m, 3);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double n = ns[i];
        a.row(i) << 1.0, std::log(n);
        b.row(i) << 1.0, n;
        c.row(i) << 1.0, n, n * std::log(n);
    }
    Fit algebraic = least_squares(a, y);
    Fit exponential = least_squares(b, y);
    Fit factorial;
    // The factorial fit carries a linear term for the s^n and e^n factors of
    // s^n / n!; it only counts when the n ln n slope is clearly negative,
    // otherwise it is the exponential fit in disguise.
    if (m >= 4) {
        Fit f = least_squares(c, y);
        if (f.coef(2) < -0.5)
            factorial = f;
    }

    verdict.fit_residual = algebraic.rms;
    verdict.decay = {DecayKind::Algebraic, -algebraic.coef(1)};
    if (exponential.rms < verdict.fit_residual) {
        verdict.fit_residual = exponential.rms;
        verdict.decay = {DecayKind::Exponential, std::exp(exponential.coef(1))};
    }
    if (factorial.rms < verdict.fit_residual) {
        verdict.fit_residual = factorial.rms;
        verdict.decay = {DecayKind::Factorial, factorial.coef(2)};
    }
    if (verdict.fit_residual > residual_threshold) {
        verdict.decay = {DecayKind::Undetermined, 0};
        return verdict;
    }

    switch (verdict.decay.kind) {
    case DecayKind::Exponential:
    case DecayKind::Factorial:
        verdict.regime = Regime::Analytic;
        break;
    case DecayKind::Algebraic:
        if (verdict.sign_pattern == SignPattern::UltimatelyConstant)
            verdict.regime = Regime::NotAnalyticAtOrigin;
        else if (verdict.sign_pattern == SignPattern::UltimatelyAlternating)
            verdict.regime = Regime::AnalyticViaSummation;
        break;
    case DecayKind::Undetermined:
        break;
    }
    return verdict;
}

} // namespace lagsum
