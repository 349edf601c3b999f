#include <doctest.h>

#include "lagsum/format.hpp"
#include "lagsum/hypergeom.hpp"
#include "lagsum/model_problems.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <random>

using namespace lagsum;

namespace {

// Naive power series in 100 digits, run far past convergence.
Real100 naive_pfq(const std::vector<Real100>& num, const std::vector<Real100>& den, const Real100& z,
                  unsigned terms)
{
    Real100 term = 1, sum = 0;
    for (unsigned k = 0; k < terms; ++k) {
        sum += term;
        for (const auto& a : num)
            term *= a + k;
        for (const auto& b : den)
            term /= b + k;
        term *= z / (k + 1);
    }
    return sum;
}

} // namespace

TEST_CASE("series parameter validation")
{
    HypSeriesSpec<double> bad{{1.0}, {2.0}, -1.0, 0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    HypSeriesSpec<double> pole{{1.0, 2.0}, {-3.0}, -1.0, 2};
    CHECK_THROWS_AS(pole.validate(), std::invalid_argument);
    pole.shift = 4; // -3 + 4 = 1
    CHECK_NOTHROW(pole.validate());
    CHECK_THROWS_AS(partial_sums(HypSeriesSpec<double>{{1.0}, {}, 0.5, 0}, 0), std::invalid_argument);
}

TEST_CASE("partial sums of the Gauss model series")
{
    auto s = partial_sums(model_2f1<double>(0), 3);
    CHECK(s[0] == 1.0);
    CHECK(s[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(format_number(s[2], 8) == "0.77777778");
    auto s10 = partial_sums(model_2f1<Real50>(10), 18);
    CHECK(format_number(s10[1]) == "-8.30054644808743");
    CHECK(format_number(s10[17], 5) == "-0.72381e+06");
    CHECK(partial_sums(model_3f2<double>(4), 1) == std::vector<double>{1.0});
}

TEST_CASE("terms alternate at z = -1 with positive parameters")
{
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(0.1, 8.0);
    for (int trial = 0; trial < 20; ++trial) {
        HypSeriesSpec<double> spec{{dist(rng), dist(rng)}, {dist(rng)}, -1.0, unsigned(trial % 12)};
        auto s = partial_sums(spec, 40);
        for (std::size_t k = 1; k < s.size(); ++k) {
            double term = s[k] - s[k - 1];
            CHECK((k % 2 == 0 ? term > 0 : term < 0));
        }
    }
}

TEST_CASE("binomial series")
{
    CHECK(binomial_1F0(1.0, 0.5) == doctest::Approx(2.0));
    CHECK(binomial_1F0(3.7, 0.0) == 1.0);
    // 1F0(-rho+nu; -1) = 2^{rho-nu}
    CHECK(binomial_1F0(-0.5 + 2, -1.0) == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-15));
    CHECK_THROWS_AS(binomial_1F0(1.0, 1.0), std::domain_error);
    // the direct series agrees inside the unit disc
    const auto ctx = context_for<double>();
    CHECK(direct_sum<double>({2.5}, {}, -0.4, ctx) == doctest::Approx(binomial_1F0(2.5, -0.4)).epsilon(1e-14));
}

TEST_CASE("Gauss function at -1 and inside |z| <= 1/2")
{
    const auto ctx = context_for<Real50>();
    const Real50 a = Real50(3) / 2, b = Real50(7) / 3, c = Real50(21) / 4;
    CHECK(format_number(gauss_2F1_at(a, b, c, Real50(-1), ctx)) == "0.597156373980973");
    CHECK(gauss_2F1_at(a, b, c, Real50(0), ctx) == 1);
    const Real50 ln2 = log(Real50(2));
    CHECK(abs(gauss_2F1_at(Real50(1), Real50(1), Real50(2), Real50(-1), ctx) - ln2) < Real50("1e-46"));
    CHECK_THROWS_AS(gauss_2F1_at(a, b, c, Real50(0.7), ctx), std::out_of_range);
    CHECK_THROWS_AS(gauss_2F1_at(a, b, c, Real50(-1.5), ctx), std::out_of_range);
    CHECK_THROWS_AS(gauss_2F1_at(a, b, Real50(-2), Real50(-1), ctx), std::invalid_argument);

    // |z| <= 1/2 against a naive 100-digit sum
    const auto dctx = context_for<double>();
    for (double z : {-0.5, -0.2, 0.3, 0.5}) {
        double expect = static_cast<double>(naive_pfq({Real100(1.5), Real100(7) / 3}, {Real100(21) / 4}, Real100(z), 400));
        CHECK(gauss_2F1_at(1.5, 7.0 / 3, 21.0 / 4, z, dctx) == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("continuation routes agree")
{
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> ab(0.1, 6.0), shift(20.0, 26.0);
    const auto ctx = context_for<Real50>();
    const Real50 tol = ctx.tolerance<Real50>(6);
    const Real50 z(-1);
    for (int trial = 0; trial < 30; ++trial) {
        const Real50 a(ab(rng)), b(ab(rng));
        // c well above a+b so that the series at -1 converges fast enough to sum directly
        const Real50 c = a + b + Real50(shift(rng));
        Real50 direct = direct_sum<Real50>({a, b}, {c}, z, ctx);
        Real50 r1 = gauss_2F1_route(a, b, c, z, ContinuationRoute::PfaffA, ctx);
        Real50 r2 = gauss_2F1_route(a, b, c, z, ContinuationRoute::PfaffB, ctx);
        CHECK(abs(r1 - direct) <= tol * abs(direct));
        CHECK(abs(r2 - direct) <= tol * abs(direct));
    }
    // c < a+b: only the transformed routes are available; they must agree
    std::uniform_real_distribution<double> cdist(0.2, 3.0);
    for (int trial = 0; trial < 30; ++trial) {
        const Real50 a(ab(rng) + 3), b(ab(rng) + 3), c(cdist(rng));
        Real50 r1 = gauss_2F1_route(a, b, c, z, ContinuationRoute::PfaffA, ctx);
        Real50 r2 = gauss_2F1_route(a, b, c, z, ContinuationRoute::PfaffB, ctx);
        CHECK(abs(r1 - r2) <= tol * abs(r1));
    }
}

TEST_CASE("Euler route where its series converges")
{
    // (1-z)^{c-a-b} 2F1(c-a, c-b; c; z): at z = -1 the shifted model series
    // has terms ~ k^{c-a-b-nu-1}; large nu keeps the direct sum short.
    const auto ctx = context_for<Real50>();
    const Real50 tol = ctx.tolerance<Real50>(6);
    for (unsigned nu : {16u, 20u, 30u}) {
        const Real50 a = Real50(3) / 2 + nu, b = Real50(7) / 3 + nu, c = Real50(21) / 4 + nu;
        Real50 euler = gauss_2F1_route(a, b, c, Real50(-1), ContinuationRoute::Euler, ctx);
        Real50 pfaff = gauss_2F1_route(a, b, c, Real50(-1), ContinuationRoute::PfaffA, ctx);
        CHECK(abs(euler - pfaff) <= tol * abs(pfaff));
    }
    CHECK_THROWS_AS(gauss_2F1_route(1.0, 1.0, 2.0, 0.7, ContinuationRoute::Euler, context_for<double>()),
                    std::out_of_range);
    CHECK_THROWS_AS(gauss_2F1_route(1.0, 1.0, 2.0, 0.3, ContinuationRoute::PfaffA, context_for<double>()),
                    std::out_of_range);
}

TEST_CASE("large-nu estimate")
{
    const double a = 1.5, b = 7.0 / 3, c = 21.0 / 4;
    CHECK(large_nu_2F1_estimate(a, b, c, 10, 1) == doctest::Approx(std::pow(2.0, c - a - b - 10)));
    // a = b = c: the first correction vanishes
    CHECK(large_nu_2F1_estimate(2.0, 2.0, 2.0, 5, 2) == doctest::Approx(std::pow(2.0, -2.0 - 5)));
    CHECK_THROWS_AS(large_nu_2F1_estimate(a, b, c, 10, 0), std::invalid_argument);
    CHECK_THROWS_AS(large_nu_2F1_estimate(a, b, c, 10, 4), std::invalid_argument);

    const auto ctx = context_for<Real50>();
    auto deviation = [&](unsigned nu) {
        const Real50 ra = Real50(3) / 2, rb = Real50(7) / 3, rc = Real50(21) / 4;
        Real50 exact = gauss_2F1_at<Real50>(ra + nu, rb + nu, rc + nu, Real50(-1), ctx);
        Real50 est = large_nu_2F1_estimate(ra, rb, rc, nu, 2);
        return static_cast<double>(abs(est - exact) / abs(exact));
    };
    const double d10 = deviation(10), d20 = deviation(20), d40 = deviation(40);
    // at nu = 10 the first correction is still ~70%, so only the trend is checked
    CHECK(d20 < d10);
    CHECK(d40 < 0.1);
    const double ratio = d20 / d40; // O(nu^-2) decay
    CHECK(ratio > 3.2);
    CHECK(ratio < 4.8);
    // the third term improves on the second
    const Real50 ra = Real50(3) / 2, rb = Real50(7) / 3, rc = Real50(21) / 4;
    Real50 exact = gauss_2F1_at<Real50>(ra + 20, rb + 20, rc + 20, Real50(-1), ctx);
    CHECK(abs(large_nu_2F1_estimate(ra, rb, rc, 20, 3) - exact) < abs(large_nu_2F1_estimate(ra, rb, rc, 20, 2) - exact));
}

TEST_CASE("Kummer and Bessel-type reference series")
{
    const auto ctx = context_for<double>();
    CHECK(kummer_1F1(0.3, 1.7, 0.0, ctx) == 1.0);
    CHECK(kummer_1F1(0.0, 1.7, 12.0, ctx) == 1.0);
    CHECK(kummer_1F1(1.0, 1.0, 1.0, ctx) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
    for (double z : {-40.0, -20.0, -3.0, 5.0, 30.0}) {
        double expect = static_cast<double>(naive_pfq({Real100(-0.5)}, {Real100(1)}, Real100(z), 600));
        CHECK(kummer_1F1(-0.5, 1.0, z, ctx) == doctest::Approx(expect).epsilon(1e-13));
    }
    CHECK_THROWS_AS(kummer_1F1(1.0, 1.0, 60.0, ctx), std::out_of_range);
    CHECK_THROWS_AS(kummer_1F1(1.0, -2.0, 1.0, ctx), std::invalid_argument);

    CHECK(bessel_0F1(2.5, 0.0, ctx) == 1.0);
    // 0F1(; 1; -x^2/4) = J_0(x)
    CHECK(bessel_0F1(1.0, -0.25, ctx) == doctest::Approx(boost::math::cyl_bessel_j(0, 1.0)).epsilon(1e-15));
    double expect = static_cast<double>(naive_pfq({}, {Real100(2)}, Real100(1), 80));
    CHECK(bessel_0F1(2.0, 1.0, ctx) == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("direct summation reports divergence")
{
    const auto ctx = context_for<double>();
    CHECK_THROWS_AS(direct_sum<double>({12.0, 13.0}, {2.0}, -1.0, ctx, 500), convergence_error);
    CHECK_THROWS_AS(direct_sum<double>({1.0}, {-1.0}, 0.1, ctx), std::invalid_argument);
}
