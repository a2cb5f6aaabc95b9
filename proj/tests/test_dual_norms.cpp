#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "lctchaos/dual_norms.hpp"
#include "lctchaos/errors.hpp"

using namespace lctchaos;

namespace {

TailDistribution weibull(double r) { return make_distribution(Family::WeibullTail, r); }

// Radial sweep of a 2-D ball: the ball is star-shaped, so the sup of a linear
// form is attained on the boundary points r(theta) e(theta).
double sweep_oracle_2d(double a0, double a1, const TailDistribution& d, double p, int angles)
{
    double best = 0.0;
    for (int s = 0; s < angles; ++s) {
        const double th = 2.0 * std::numbers::pi * s / angles;
        const double c = std::cos(th), sn = std::sin(th);
        double lo = 0.0, hi = 1.0;
        while (hat_N(d, hi * c) + hat_N(d, hi * sn) < p) hi *= 2.0;
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (lo + hi);
            (hat_N(d, mid * c) + hat_N(d, mid * sn) <= p ? lo : hi) = mid;
        }
        best = std::max(best, lo * (a0 * c + a1 * sn));
    }
    return best;
}

std::vector<double> random_vector(Rng& rng, std::size_t n)
{
    std::vector<double> v(n);
    for (auto& e : v) e = standard_normal(rng);
    return v;
}

}  // namespace

TEST_CASE("one-dimensional conjugate")
{
    const auto g = make_distribution(Family::Gaussian, 2.0);
    const auto w1 = weibull(1.0);
    auto c0 = conjugate_1d(w1, 0.0, 3.0);
    CHECK(c0.value == 0.0);
    CHECK(c0.argmax == 0.0);
    auto cg = conjugate_1d(g, 2.0, 1.0);
    CHECK(cg.value == doctest::Approx(1.0));
    CHECK(cg.argmax == doctest::Approx(1.0));
    auto cw = conjugate_1d(w1, 1.0, 1.0);
    CHECK(cw.value == doctest::Approx(0.25));
    CHECK(cw.argmax == doctest::Approx(0.5));
    // 1-D scan at resolution 1e-5
    double scan = -1.0;
    for (int i = -500000; i <= 500000; ++i) {
        const double x = i * 1e-5;
        scan = std::max(scan, x - hat_N(w1, x));
    }
    CHECK(cw.value == doctest::Approx(scan).epsilon(1e-8));
    CHECK_FALSE(conjugate_1d(w1, 2.0, 1.0).bounded);
    CHECK_THROWS_AS(conjugate_1d(w1, 1.0, 0.0), DomainError);
}

TEST_CASE("norm_Xp worked examples")
{
    const auto g = make_distribution(Family::Gaussian, 2.0);
    const std::vector<double> a34{3.0, 4.0};
    CHECK(norm_Xp(a34, DualBall::uniform(g, 2, 4.0)).value == doctest::Approx(10.0).epsilon(1e-10));

    const auto w1 = weibull(1.0);
    const std::vector<double> a10{1.0, 0.0};
    CHECK(norm_Xp(a10, DualBall::uniform(w1, 2, 9.0)).value == doctest::Approx(9.0).epsilon(1e-10));

    const std::vector<double> a11{1.0, 1.0};
    const auto ball = DualBall::uniform(w1, 2, 2.0);
    const auto res = norm_Xp(a11, ball);
    CHECK(res.value == doctest::Approx(2.25).epsilon(1e-10));
    CHECK(res.value == doctest::Approx(sweep_oracle_2d(1, 1, w1, 2.0, 200000)).epsilon(1e-3));
    const double hi = std::max(res.maximizer[0], res.maximizer[1]);
    const double lo = std::min(res.maximizer[0], res.maximizer[1]);
    CHECK(hi == doctest::Approx(1.75).epsilon(1e-8));
    CHECK(lo == doctest::Approx(0.5).epsilon(1e-8));
    const std::vector<double> witness{1.75, 0.5};
    const auto mem = ball_membership(witness, ball);
    CHECK(mem.inside);
    CHECK(std::fabs(mem.slack) < 1e-9);
}

TEST_CASE("norm_Xp edge cases")
{
    const auto w1 = weibull(1.0);
    CHECK(norm_Xp(std::vector<double>{}, DualBall::uniform(w1, 0, 2.0)).value == 0.0);
    DualBall raw{2.0, {TailDistribution{Family::WeibullTail, 1.0, 1.0, false}}};
    CHECK_THROWS_AS(norm_Xp(std::vector<double>{1.0}, raw), ConfigError);
}

TEST_CASE("ball membership")
{
    const auto g = make_distribution(Family::Gaussian, 2.0);
    const auto ball = DualBall::uniform(g, 2, 4.0);
    auto center = ball_membership(std::vector<double>{0.0, 0.0}, ball);
    CHECK(center.inside);
    CHECK(center.slack == 4.0);
    auto edge = ball_membership(std::vector<double>{2.0, 0.0}, ball);
    CHECK(edge.inside);
    CHECK(edge.slack == doctest::Approx(0.0));
    CHECK_THROWS(ball_membership(std::vector<double>{1.0}, ball));
}

TEST_CASE("norm_Xp agrees with the radial sweep oracle")
{
    Rng rng = make_stream(21, {1});
    for (double r : {1.0, 1.5, 2.0, 3.0}) {
        for (double p : {1.0, 2.0, 4.0, 8.0}) {
            const auto d = weibull(r);
            for (int t = 0; t < 3; ++t) {
                const auto a = random_vector(rng, 2);
                const double got = norm_Xp(a, DualBall::uniform(d, 2, p)).value;
                const double want = sweep_oracle_2d(a[0], a[1], d, p, 100000);
                CAPTURE(r);
                CAPTURE(p);
                CHECK(std::fabs(got - want) <= 1e-3 * want);
                CHECK(got >= want - 1e-9 * want);
            }
        }
    }
}

TEST_CASE("norm_Xp properties")
{
    Rng rng = make_stream(22, {1});
    for (int trial = 0; trial < 60; ++trial) {
        const double r = std::vector<double>{1.0, 1.5, 2.0, 3.0}[trial % 4];
        const double p = 1.0 + 7.0 * uniform_open(rng);
        const std::size_t n = 1 + trial % 5;
        const auto d = (trial % 3 == 0) ? make_distribution(Family::ExpPowerDensity, r) : weibull(r);
        const auto ball = DualBall::uniform(d, n, p);
        const auto a = random_vector(rng, n);
        const auto b = random_vector(rng, n);
        const auto res = norm_Xp(a, ball);

        // witness lies in the ball and attains the value
        const auto mem = ball_membership(res.maximizer, ball);
        CHECK(mem.slack >= -1e-8);
        CHECK(dot(a, res.maximizer) == doctest::Approx(res.value).epsilon(1e-10));
        CHECK(res.dual_value == doctest::Approx(res.value).epsilon(1e-7));

        // homogeneity and triangle inequality
        std::vector<double> scaled(a), sum(n);
        for (auto& v : scaled) v *= -2.5;
        for (std::size_t i = 0; i < n; ++i) sum[i] = a[i] + b[i];
        CHECK(norm_Xp(scaled, ball).value == doctest::Approx(2.5 * res.value).epsilon(1e-8));
        CHECK(norm_Xp(sum, ball).value <= res.value + norm_Xp(b, ball).value + 1e-8);

        // inclusion in sqrt(p) B2 + p B1 and scaling in p
        CHECK(res.value <= std::sqrt(p) * norm2(a) + p * norm_inf(a) + 1e-9);
        double prev = res.value;
        for (double u : {2.0, 4.0, 8.0}) {
            const double at = norm_Xp(a, DualBall::uniform(d, n, u * p)).value;
            CHECK(at <= u * res.value * (1 + 1e-12));
            CHECK(at >= prev * (1 - 1e-12));
            prev = at;
        }
    }
}

TEST_CASE("heterogeneous tails use the general piece search")
{
    DualBall ball{3.0, {weibull(1.0), weibull(2.0)}};
    const std::vector<double> a{1.0, 0.7};
    const double got = norm_Xp(a, ball).value;
    // sweep with the per-coordinate tails
    double best = 0.0;
    for (int s = 0; s < 200000; ++s) {
        const double th = 2.0 * std::numbers::pi * s / 200000;
        const double c = std::cos(th), sn = std::sin(th);
        double lo = 0.0, hi = 16.0;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            (hat_N(ball.tails[0], mid * c) + hat_N(ball.tails[1], mid * sn) <= 3.0 ? lo : hi) = mid;
        }
        best = std::max(best, lo * (a[0] * c + a[1] * sn));
    }
    CHECK(got == doctest::Approx(best).epsilon(1e-3));
}

TEST_CASE("norm_XYp examples")
{
    const auto g = make_distribution(Family::Gaussian, 2.0);
    const Matrix id(2, 2, {1.0, 0.0, 0.0, 1.0});
    CHECK(norm_XYp(id, DualBall::uniform(g, 2, 3.0), DualBall::uniform(g, 2, 3.0)).value ==
          doctest::Approx(3.0).epsilon(1e-8));

    // rank one factorizes
    const auto w1 = weibull(1.0);
    const std::vector<double> u{1.0, -0.4, 0.3}, v{0.5, 2.0};
    Matrix uv(3, 2);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 2; ++j) uv(i, j) = u[i] * v[j];
    const auto bx = DualBall::uniform(w1, 3, 4.0);
    const auto by = DualBall::uniform(weibull(3.0), 2, 4.0);
    CHECK(norm_XYp(uv, bx, by).value == doctest::Approx(norm_Xp(u, bx).value * norm_Xp(v, by).value).epsilon(1e-8));

    // identity, r = 1, against the brute oracle
    const auto b2 = DualBall::uniform(w1, 2, 2.0);
    const auto res = norm_XYp(id, b2, b2);
    CHECK(res.value == doctest::Approx(brute_norm_XYp(id, b2, b2, 1e-3)).epsilon(1e-3));
    CHECK(res.trace.size() >= 1);
}

TEST_CASE("brute oracles")
{
    const auto g = make_distribution(Family::Gaussian, 2.0);
    const auto w1 = weibull(1.0);
    CHECK(brute_norm_XYp(Matrix(2, 2), DualBall::uniform(w1, 2, 2.0), DualBall::uniform(w1, 2, 2.0), 1e-2) == 0.0);
    const Matrix one(1, 1, {1.0});
    CHECK(brute_norm_XYp(one, DualBall::uniform(g, 1, 4.0), DualBall::uniform(g, 1, 4.0), 1e-2) ==
          doctest::Approx(4.0).epsilon(1e-9));
    CHECK(brute_norm_XYp(one, DualBall::uniform(w1, 1, 4.0), DualBall::uniform(w1, 1, 4.0), 1e-2) ==
          doctest::Approx(16.0).epsilon(1e-9));
    CHECK_THROWS_AS(boundary_grid(DualBall::uniform(w1, 4, 2.0), 1e-2), DomainError);
    CHECK_THROWS_AS(boundary_grid(DualBall::uniform(w1, 2, 2.0), 0.1), DomainError);
}

TEST_CASE("alternating ascent is monotone and matches the brute oracle on small matrices")
{
    Rng rng = make_stream(23, {1});
    for (double r : {1.0, 2.0, 3.0}) {
        for (int t = 0; t < 3; ++t) {
            Matrix a(2, 2, random_vector(rng, 4));
            const auto bx = DualBall::uniform(weibull(r), 2, 3.0);
            const auto res = norm_XYp(a, bx, bx);
            for (std::size_t k = 1; k < res.trace.size(); ++k) CHECK(res.trace[k] >= res.trace[k - 1] - 1e-12);
            const double brute = brute_norm_XYp(a, bx, bx, 1e-3);
            CHECK(res.value >= brute * (1 - 1e-3));
            CHECK(res.value <= brute * (1 + 1e-3));
        }
    }
}
