#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "lctchaos/distribution.hpp"
#include "lctchaos/errors.hpp"

using namespace lctchaos;

namespace {

const double kInvE = std::exp(-1.0);

// Root of erfc(s) = 1/e by plain bisection.
double erfc_root()
{
    double lo = 0.0, hi = 3.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (std::erfc(mid) > kInvE ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// E|X|^k of the normalized exp-power law: Gamma((k+1)/r) / Gamma(1/r) / s^k.
double exp_power_moment(double r, double s, int k)
{
    return std::exp(std::lgamma((k + 1.0) / r) - std::lgamma(1.0 / r)) / std::pow(s, k);
}

std::vector<TailDistribution> family_grid()
{
    std::vector<TailDistribution> out;
    for (double r : {1.0, 1.25, 1.5, 2.0, 3.0, 5.0}) {
        out.push_back(make_distribution(Family::WeibullTail, r));
        out.push_back(make_distribution(Family::ExpPowerDensity, r));
    }
    out.push_back(make_distribution(Family::Gaussian, 2.0));
    return out;
}

}  // namespace

TEST_CASE("weibull members are already normalized")
{
    CHECK(make_distribution(Family::WeibullTail, 1.0).scale == 1.0);
    CHECK(make_distribution(Family::WeibullTail, 2.0).scale == 1.0);
}

TEST_CASE("exp-power r=2 scale is the root of erfc(s) = 1/e")
{
    const auto d = make_distribution(Family::ExpPowerDensity, 2.0);
    CHECK(d.scale == doctest::Approx(erfc_root()).epsilon(1e-10));
    CHECK(d.scale == doctest::Approx(0.637).epsilon(1e-3));
    CHECK(std::fabs(std::erfc(d.scale) - kInvE) < 1e-10);
    CHECK(tail_N(d, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("normalization holds across the shape grid")
{
    for (const auto& d : family_grid()) {
        CAPTURE(family_name(d.family));
        CAPTURE(d.r);
        CHECK(d.normalized);
        CHECK(std::fabs(survival(d, 1.0) - kInvE) < 1e-9);
    }
}

TEST_CASE("tail function values")
{
    CHECK(tail_N(make_distribution(Family::WeibullTail, 1.0), 3.0) == doctest::Approx(3.0));
    CHECK(tail_N(make_distribution(Family::WeibullTail, 2.0), 2.0) == doctest::Approx(4.0));
    CHECK(tail_N(make_distribution(Family::Gaussian, 7.0), 2.0) == doctest::Approx(4.0));
    CHECK_THROWS_AS(tail_N(make_distribution(Family::WeibullTail, 1.0), -1.0), DomainError);
}

TEST_CASE("shape below one is rejected")
{
    CHECK_THROWS_AS(make_distribution(Family::WeibullTail, 0.5), DomainError);
    CHECK_THROWS_AS(make_distribution(Family::ExpPowerDensity, 0.99), DomainError);
}

TEST_CASE("hat_N branches")
{
    for (const auto& d : family_grid()) {
        CHECK(hat_N(d, 0.5) == doctest::Approx(0.25));
        CHECK(hat_N(d, -0.5) == doctest::Approx(0.25));
        CHECK(hat_N(d, 1.0) == doctest::Approx(1.0));
        for (double t : {1.0 + 1e-12, 1.5, 3.0, 7.0}) {
            CHECK(hat_N(d, t) == doctest::Approx(tail_N(d, t)));
            CHECK(hat_N(d, -t) == hat_N(d, t));
            CHECK(tail_N(d, t) >= t - 1e-12);
        }
        for (double t : {0.0, 0.3, 0.99}) CHECK(hat_N(d, t) <= 1.0);
    }
    CHECK(hat_N(make_distribution(Family::WeibullTail, 1.0), 4.0) == doctest::Approx(4.0));
}

TEST_CASE("tail function is convex")
{
    Rng rng = make_stream(11, {1});
    for (const auto& d : family_grid()) {
        for (int trial = 0; trial < 100; ++trial) {
            double t[3] = {6.0 * uniform_open(rng), 6.0 * uniform_open(rng), 6.0 * uniform_open(rng)};
            std::sort(t, t + 3);
            if (t[2] - t[0] < 1e-6) continue;
            const double w = (t[1] - t[0]) / (t[2] - t[0]);
            const double chord = (1.0 - w) * tail_N(d, t[0]) + w * tail_N(d, t[2]);
            CHECK(tail_N(d, t[1]) <= chord + 1e-9 * (1.0 + chord));
        }
    }
}

TEST_CASE("derivative and inverse agree with finite differences")
{
    for (const auto& d : family_grid()) {
        for (double t : {0.5, 1.0, 2.0, 4.0}) {
            const double h = 1e-6;
            const double fd = (tail_N(d, t + h) - tail_N(d, t - h)) / (2 * h);
            CHECK(tail_N_derivative(d, t) == doctest::Approx(fd).epsilon(1e-5));
            CHECK(tail_N_inverse(d, tail_N(d, t)) == doctest::Approx(t).epsilon(1e-10));
        }
    }
}

TEST_CASE("raw moments match closed forms")
{
    CHECK(raw_moment(make_distribution(Family::WeibullTail, 1.0), 2) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(raw_moment(make_distribution(Family::WeibullTail, 2.0), 2) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(raw_moment(make_distribution(Family::WeibullTail, 3.0), 3) == 0.0);
    for (double r : {1.0, 1.5, 2.0, 3.0, 5.0}) {
        const auto w = make_distribution(Family::WeibullTail, r);
        const auto e = make_distribution(Family::ExpPowerDensity, r);
        for (int k : {2, 4, 6}) {
            CHECK(raw_moment(w, k) == doctest::Approx(std::tgamma(1.0 + k / r)).epsilon(1e-9));
            CHECK(raw_moment(e, k) == doctest::Approx(exp_power_moment(r, e.scale, k)).epsilon(1e-9));
        }
    }
}

TEST_CASE("second and fourth moment brackets hold for every member")
{
    for (const auto& d : family_grid()) {
        const double m2 = raw_moment(d, 2);
        CHECK(m2 >= kInvE);
        CHECK(m2 <= 3.0);
        CHECK(raw_moment(d, 4) <= 1.0 + 64.0 / std::exp(1.0));
    }
}

TEST_CASE("sampling")
{
    Rng rng = make_stream(5, {2});
    CHECK(sample(make_distribution(Family::WeibullTail, 1.0), rng, 0).empty());

    SUBCASE("normalization identity, r = 1")
    {
        const auto d = make_distribution(Family::WeibullTail, 1.0);
        const std::size_t n = 1'000'000;
        const auto xs = sample(d, rng, n);
        const double frac =
            static_cast<double>(std::count_if(xs.begin(), xs.end(), [](double x) { return std::fabs(x) >= 1.0; })) / n;
        CHECK(std::fabs(frac - kInvE) <= 3.0 * std::sqrt(kInvE * (1 - kInvE) / n));
    }
    SUBCASE("second moment against quadrature, r = 2")
    {
        const auto d = make_distribution(Family::WeibullTail, 2.0);
        const std::size_t n = 1'000'000;
        const auto xs = sample(d, rng, n);
        double s = 0, s2 = 0;
        for (double x : xs) {
            s += x * x;
            s2 += x * x * x * x;
        }
        const double mean = s / n;
        const double se = std::sqrt((s2 / n - mean * mean) / n);
        CHECK(std::fabs(mean - raw_moment(d, 2)) <= 3.0 * se);
    }
    SUBCASE("Kolmogorov-Smirnov distance of |X| is small")
    {
        for (const auto& d : family_grid()) {
            auto xs = sample(d, rng, 100'000);
            for (auto& x : xs) x = std::fabs(x);
            std::sort(xs.begin(), xs.end());
            double ks = 0.0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                const double cdf = 1.0 - survival(d, xs[i]);
                ks = std::max({ks, std::fabs(cdf - double(i) / xs.size()), std::fabs(cdf - double(i + 1) / xs.size())});
            }
            CAPTURE(family_name(d.family));
            CAPTURE(d.r);
            CHECK(ks < 0.01);
        }
    }
    SUBCASE("symmetry of the sign")
    {
        const auto xs = sample(make_distribution(Family::ExpPowerDensity, 1.5), rng, 200'000);
        const double pos = std::count_if(xs.begin(), xs.end(), [](double x) { return x > 0; }) / 200'000.0;
        CHECK(std::fabs(pos - 0.5) < 3.0 * 0.5 / std::sqrt(200'000.0));
    }
}

TEST_CASE("same stream, same draws")
{
    const auto d = make_distribution(Family::ExpPowerDensity, 3.0);
    Rng a = make_stream(9, {4, 2});
    Rng b = make_stream(9, {4, 2});
    CHECK(sample(d, a, 1000) == sample(d, b, 1000));
}

TEST_CASE("family names round-trip")
{
    for (auto f : {Family::WeibullTail, Family::ExpPowerDensity, Family::Gaussian})
        CHECK(parse_family(family_name(f)) == f);
    CHECK_THROWS_AS(parse_family("cauchy"), ConfigError);
}
