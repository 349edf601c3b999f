#include <doctest.h>

#include "lagsum/analyzer.hpp"
#include "lagsum/format.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <random>

using namespace lagsum;

namespace {

template <class Real>
LaguerreSeries<Real> family_series(typename CoefficientFamily<Real>::Kind kind, double alpha)
{
    return LaguerreSeries<Real>::from_family(CoefficientFamily<Real>(std::move(kind), Real(alpha)));
}

// gamma_nu of the alternating power family: Taylor coefficients of
// 2^rho Gamma(rho+alpha+1)/Gamma(alpha+1) 1F1(-rho; alpha+1; z/2).
Real50 alt_power_gamma(const Real50& rho, const Real50& alpha, unsigned nu)
{
    Real50 value = pow(Real50(2), rho) * exp(lgamma(rho + alpha + 1) - lgamma(alpha + 1));
    for (unsigned k = 0; k < nu; ++k)
        value *= (-rho + k) / ((alpha + 1 + k) * (k + 1) * 2);
    return value;
}

} // namespace

TEST_CASE("series construction")
{
    LaguerreParams<double> p(0.0);
    CHECK_THROWS_AS(LaguerreSeries<double>::explicit_list(p, std::vector<double>(7, 1.0)), std::invalid_argument);
    auto s = LaguerreSeries<double>::explicit_list(p, std::vector<double>(8, 1.0));
    CHECK(*s.available() == 8);
    CHECK_THROWS_AS(s.coefficients(4, 5), std::out_of_range);
    auto padded = LaguerreSeries<double>::zero_padded(FiniteLaguerreSum<double>(p, {1.0, 2.0}));
    CHECK_FALSE(padded.available().has_value());
    CHECK(padded.coefficients(1, 3) == std::vector<double>{2.0, 0.0, 0.0});
    auto fam = family_series<double>(Geometric<double>{0.5}, 0.0);
    CHECK(fam.coefficients(3, 1)[0] == 0.125);
}

TEST_CASE("classification of the built-in families")
{
    auto power = classify(family_series<double>(Power<double>{0.5}, 0.0));
    CHECK(power.sign_pattern == SignPattern::UltimatelyConstant);
    CHECK(power.decay.kind == DecayKind::Algebraic);
    CHECK(power.decay.parameter == doctest::Approx(1.5).epsilon(0.1 / 1.5));
    CHECK(power.regime == Regime::NotAnalyticAtOrigin);
    CHECK(power.fit_residual <= 0.1);

    auto geo = classify(family_series<double>(Geometric<double>{0.5}, 0.0));
    CHECK(geo.sign_pattern == SignPattern::UltimatelyConstant);
    CHECK(geo.decay.kind == DecayKind::Exponential);
    CHECK(std::abs(geo.decay.parameter - 0.5) < 0.01);
    CHECK(geo.regime == Regime::Analytic);

    auto alt = classify(family_series<double>(AltPower<double>{0.5}, 0.0));
    CHECK(alt.sign_pattern == SignPattern::UltimatelyAlternating);
    CHECK(alt.decay.kind == DecayKind::Algebraic);
    CHECK(alt.regime == Regime::AnalyticViaSummation);
    CHECK(std::abs(alt.decay.parameter - power.decay.parameter) < 0.05);

    auto fact = classify(family_series<double>(Factorial<double>{1.0}, 0.0));
    CHECK(fact.decay.kind == DecayKind::Factorial);
    CHECK(fact.regime == Regime::Analytic);

    auto gp = classify(family_series<double>(GeometricPower<double>{0.5, 0.5}, 0.0));
    CHECK(gp.sign_pattern == SignPattern::UltimatelyAlternating);
    CHECK(gp.decay.kind == DecayKind::Exponential);
    CHECK(std::abs(gp.decay.parameter - 0.5) < 0.01);
    CHECK(gp.regime == Regime::Analytic);

    // |lambda_n| ~ n^{a+b-c-alpha-1}
    auto hyp = classify(family_series<double>(HypRatio<double>{1.5, 7.0 / 3, 21.0 / 4}, 0.0));
    CHECK(hyp.sign_pattern == SignPattern::UltimatelyAlternating);
    CHECK(hyp.decay.kind == DecayKind::Algebraic);
    CHECK(hyp.decay.parameter == doctest::Approx(21.0 / 4 + 1 - 1.5 - 7.0 / 3).epsilon(0.05));
    CHECK(hyp.regime == Regime::AnalyticViaSummation);

    auto ep = classify(family_series<double>(ExpPower<double>{0.5, -0.5}, 0.0));
    CHECK(ep.decay.kind == DecayKind::Algebraic);
    CHECK(ep.regime == Regime::NotAnalyticAtOrigin);
}

TEST_CASE("classification of synthetic and explicit tails")
{
    std::vector<std::pair<int, double>> tail;
    for (int n = 100; n < 164; ++n)
        tail.emplace_back(n % 2 ? -1 : 1, -2.0 * std::log(double(n)) + 0.3);
    auto v = classify_log_tail(tail, 100);
    CHECK(v.decay.kind == DecayKind::Algebraic);
    CHECK(v.decay.parameter == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(v.regime == Regime::AnalyticViaSummation);

    // a zero in the tail: no sign pattern, no decay claim
    tail[10] = {0, 0.0};
    auto z = classify_log_tail(tail, 100);
    CHECK(z.sign_pattern == SignPattern::Irregular);
    CHECK(z.regime == Regime::Undetermined);

    // random magnitudes fit nothing
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> noisy(40);
    for (auto& x : noisy)
        x = dist(rng);
    auto nv = classify(LaguerreSeries<double>::explicit_list(LaguerreParams<double>(0.0), noisy));
    CHECK(nv.decay.kind == DecayKind::Undetermined);
    CHECK(nv.regime == Regime::Undetermined);

    // explicit geometric list, classified on its last half
    std::vector<double> geo(40);
    for (std::size_t n = 0; n < geo.size(); ++n)
        geo[n] = std::pow(0.8, double(n));
    auto gv = classify(LaguerreSeries<double>::explicit_list(LaguerreParams<double>(0.0), geo));
    CHECK(gv.decay.kind == DecayKind::Exponential);
    CHECK(gv.decay.parameter == doctest::Approx(0.8).epsilon(1e-6));

    auto list = LaguerreSeries<double>::explicit_list(LaguerreParams<double>(0.0), geo);
    CHECK_THROWS_AS(classify(list, 41), std::invalid_argument);
    CHECK_THROWS_AS(classify(list, 2), std::invalid_argument);
}

TEST_CASE("power coefficient examples")
{
    const auto ctx = context_for<double>();
    auto zero = LaguerreSeries<double>::zero_padded(FiniteLaguerreSum<double>(LaguerreParams<double>(0.0), {0, 0, 0}));
    auto z = power_coefficient(zero, 3, 40, SumMethod::Delta, ctx);
    CHECK(z.value == 0);
    CHECK(z.status == CoefficientStatus::ConvergedDirect);

    const double sqrt_half_pi = std::sqrt(boost::math::constants::pi<double>() / 2);
    auto alt = power_coefficient(family_series<double>(AltPower<double>{0.5}, 0.0), 0, 40, SumMethod::Delta, ctx);
    CHECK(alt.value == doctest::Approx(sqrt_half_pi).epsilon(1e-8));
    // at nu = 0 the inner series is a convergent alternating series
    CHECK(alt.status == CoefficientStatus::ConvergedDirect);

    const auto hctx = context_for<Real50>();
    auto alt_hp = power_coefficient(family_series<Real50>(AltPower<Real50>{Real50(0.5)}, 0.0), 0, 40, SumMethod::Delta, hctx);
    CHECK(abs(alt_hp.value - sqrt(boost::math::constants::pi<Real50>() / 2)) < Real50("1e-20"));

    auto power = power_coefficient(family_series<double>(Power<double>{0.5}, 0.0), 2, 40, SumMethod::Delta, ctx);
    CHECK(power.status == CoefficientStatus::Failed);
    // the other methods fail the same way
    for (auto method : {SumMethod::LevinD, SumMethod::Epsilon})
        CHECK(power_coefficient(family_series<double>(Power<double>{0.5}, 0.0), 2, 40, method, ctx).status ==
              CoefficientStatus::Failed);
    // from nu = 1 on the inner series of the alternating family diverge and are summed
    auto alt2 = power_coefficient(family_series<double>(AltPower<double>{0.5}, 0.0), 2, 40, SumMethod::Delta, ctx);
    CHECK(alt2.status == CoefficientStatus::SummedDivergent);
}

TEST_CASE("finite sums reduce to the finite rearrangement")
{
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_int_distribution<int> deg(0, 12);
    const auto ctx = context_for<double>();
    const double tol = ctx.tolerance<double>(4);
    for (int trial = 0; trial < 30; ++trial) {
        const double alpha = trial % 3 == 0 ? 0.0 : (trial % 3 == 1 ? 1.0 : -0.5);
        std::vector<double> lambda(std::size_t(deg(rng)) + 1);
        for (auto& l : lambda)
            l = coef(rng);
        FiniteLaguerreSum<double> f(LaguerreParams<double>(alpha), lambda);
        auto expect = finite_rearrange(f);
        auto series = LaguerreSeries<double>::zero_padded(f);
        const unsigned max_nu = unsigned(lambda.size()) + 2;
        auto result = transform_to_power_series(series, max_nu, unsigned(lambda.size()) + 4, ctx);
        CHECK(result.exists);
        double scale = 0;
        for (double c : expect)
            scale = std::max(scale, std::abs(c));
        for (unsigned nu = 0; nu <= max_nu; ++nu) {
            const double want = nu < expect.size() ? expect[nu] : 0.0;
            CHECK(std::abs(result.gammas[nu].value - want) <= tol * std::max(1.0, scale));
            CHECK(result.gammas[nu].status == CoefficientStatus::ConvergedDirect);
        }
    }
    auto result = transform_to_power_series(
        LaguerreSeries<double>::zero_padded(FiniteLaguerreSum<double>(LaguerreParams<double>(0.0), {1, -1})), 4, 8, ctx);
    CHECK(result.gammas[0].value == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(result.gammas[1].value == doctest::Approx(1.0));
    CHECK_FALSE(result.verdict.has_value());
}

TEST_CASE("geometric family gives the Taylor coefficients of its generating function")
{
    const auto ctx = context_for<double>();
    auto series = family_series<double>(Geometric<double>{0.3}, 0.0);
    auto result = transform_to_power_series(series, 5, default_budget, ctx);
    CHECK(result.exists);
    CHECK(result.gammas[0].value == doctest::Approx(1 / 0.7).epsilon(1e-12));
    CHECK(result.gammas[1].value == doctest::Approx(-0.3 / 0.49).epsilon(1e-12));
    double expect = 1 / 0.7, fact = 1;
    for (unsigned nu = 0; nu <= 5; ++nu) {
        if (nu > 0)
            fact *= nu;
        CHECK(result.gammas[nu].value == doctest::Approx(expect * std::pow(-3.0 / 7.0, nu) / fact).epsilon(1e-10));
        CHECK(result.gammas[nu].status == CoefficientStatus::ConvergedDirect);
    }
    REQUIRE(result.verdict.has_value());
    CHECK(result.verdict->regime == Regime::Analytic);
}

TEST_CASE("hypergeometric ratio family at nu = 0")
{
    const auto ctx = context_for<Real50>();
    auto series = family_series<Real50>(HypRatio<Real50>{Real50(3) / 2, Real50(7) / 3, Real50(21) / 4}, 0.0);
    auto g0 = power_coefficient(series, 0, default_budget, SumMethod::Delta, ctx);
    CHECK(format_number(g0.value) == "0.597156373980973");
    CHECK(g0.status == CoefficientStatus::ConvergedDirect);
    auto g3 = power_coefficient(series, 3, default_budget, SumMethod::Delta, ctx);
    CHECK(g3.status == CoefficientStatus::SummedDivergent);
}

TEST_CASE("alternating power family matches its closed form coefficient by coefficient")
{
    const auto ctx = context_for<Real50>();
    for (double rho : {0.5, -0.3})
        for (double alpha : {0.0, 1.0}) {
            auto series = family_series<Real50>(AltPower<Real50>{Real50(rho)}, alpha);
            auto result = transform_to_power_series(series, 8, default_budget, ctx);
            CHECK(result.exists);
            for (unsigned nu = 0; nu <= 8; ++nu) {
                Real50 want = alt_power_gamma(Real50(rho), Real50(alpha), nu);
                CHECK(abs(result.gammas[nu].value - want) <= Real50(1e-8) * abs(want));
            }
        }
}

TEST_CASE("alternating power inner series alternate")
{
    for (double rho : {0.5, -0.3, 2.5})
        for (double alpha : {0.0, 1.0}) {
            auto series = family_series<double>(AltPower<double>{rho}, alpha);
            for (unsigned nu = 0; nu <= 6; ++nu) {
                auto terms = inner_terms(series, nu, 40);
                const int start = std::max(0, int(std::ceil(rho - nu))) + 1;
                for (int mu = start + 1; mu < 40; ++mu)
                    CHECK(terms[std::size_t(mu)] * terms[std::size_t(mu - 1)] < 0);
            }
        }
}

TEST_CASE("monotone inner series are detected as divergent")
{
    const auto ctx = context_for<double>();
    auto series = family_series<double>(Power<double>{0.5}, 0.0);
    const unsigned budget = 300;
    auto terms = inner_terms(series, 2, budget);
    double s = 0, s1 = 0, prev = 0;
    for (unsigned mu = 0; mu < budget; ++mu) {
        s += terms[mu];
        if (mu == 1)
            s1 = s;
        if (mu > 1)
            CHECK(std::abs(s) > prev);
        prev = std::abs(s);
    }
    CHECK(std::abs(s) > 1e3 * std::abs(s1));
    auto g = power_coefficient(series, 2, 40, SumMethod::Delta, ctx);
    CHECK(g.status == CoefficientStatus::Failed);
    CHECK(g.stability >= 1e-3 * std::abs(g.value));

    auto result = transform_to_power_series(series, 3, 40, ctx);
    CHECK_FALSE(result.exists);
    REQUIRE(result.verdict.has_value());
    CHECK(result.verdict->regime == Regime::NotAnalyticAtOrigin);
}

TEST_CASE("closed-form verification")
{
    const auto ctx = context_for<double>();
    auto geo = family_series<double>(Geometric<double>{0.3}, 0.0);
    auto geo_result = transform_to_power_series(geo, 25, default_budget, ctx);
    auto report = verify_against_closed_form(geo, geo_result, {0.5, 1.0}, ctx);
    CHECK(report.max_relative_deviation <= 1e-8);
    CHECK(report.samples.size() == 2);

    auto fact = family_series<double>(Factorial<double>{1.0}, 0.0);
    auto fact_result = transform_to_power_series(fact, 25, default_budget, ctx);
    auto fr = verify_against_closed_form(fact, fact_result, {1.0}, ctx);
    // e 0F1(; 1; -1) = e J_0(2)
    const double expect = std::exp(1.0) * boost::math::cyl_bessel_j(0, 2.0);
    CHECK(fr.samples[0].closed_value == doctest::Approx(expect).epsilon(1e-14));
    CHECK(fr.max_relative_deviation <= 1e-8);

    const auto hctx = context_for<Real50>();
    auto alt = family_series<Real50>(AltPower<Real50>{Real50(0.5)}, 1.0);
    auto alt_result = transform_to_power_series(alt, 4, default_budget, hctx);
    auto ar = verify_against_closed_form(alt, alt_result, {Real50(0)}, hctx);
    const Real50 want = alt_power_gamma(Real50(0.5), Real50(1), 0);
    CHECK(abs(ar.max_relative_deviation - abs(alt_result.gammas[0].value - want) / want) < Real50("1e-40"));

    auto ep = family_series<double>(ExpPower<double>{0.5, -0.5}, 0.0);
    CHECK_THROWS_AS(verify_against_closed_form(ep, geo_result, {1.0}, ctx), scope_error);
    auto list = LaguerreSeries<double>::explicit_list(LaguerreParams<double>(0.0), std::vector<double>(8, 0.5));
    CHECK_THROWS_AS(verify_against_closed_form(list, geo_result, {1.0}, ctx), scope_error);
}

TEST_CASE("names of the enumerations")
{
    CHECK(to_string(Regime::AnalyticViaSummation) == "AnalyticViaSummation");
    CHECK(to_string(DecayKind::Factorial) == "Factorial");
    CHECK(to_string(SignPattern::UltimatelyAlternating) == "UltimatelyAlternating");
    CHECK(to_string(CoefficientStatus::SummedDivergent) == "SummedDivergent");
    CHECK(to_string(SumMethod::LevinD) == "levin_d");
}
