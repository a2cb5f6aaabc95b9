#include <doctest.h>

#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lctchaos/errors.hpp"
#include "lctchaos/monte_carlo.hpp"
#include "lctchaos/process.hpp"

using namespace lctchaos;

namespace {

McConfig mc(std::uint64_t seed, std::int64_t n = 200'000, bool unit = false)
{
    McConfig cfg;
    cfg.total_samples = n;
    cfg.master_seed = seed;
    cfg.unit_variance = unit;
    return cfg;
}

bool within(const McEstimate& e, double want, double k = 3.0) { return std::fabs(e.value - want) <= k * e.std_error; }

// E|Y| of the unit-variance view: the density of |X| is N'(t) e^{-N(t)}.
double unit_abs_mean(const TailDistribution& d)
{
    auto f = [&](double t) { return t * tail_N_derivative(d, t) * std::exp(-tail_N(d, t)); };
    const double m1 = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 15, 1e-13) +
                      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 1.0, 60.0, 15, 1e-13);
    return m1 * unit_variance_factor(d);
}

}  // namespace

TEST_CASE("configuration checks")
{
    McConfig bad = mc(1, 1000);
    bad.batches = 7;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad.batches = 32;
    bad.total_samples = 1001;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("decoupled moments")
{
    const auto w1 = make_distribution(Family::WeibullTail, 1.0);
    const CoefficientTensor one(1, 1, 1, 2.0, {1.0});
    const auto e = estimate_moment_decoupled(one, w1, w1, 2.0, mc(2, 200'000, true));
    CHECK(within(e, 1.0));
    CHECK(e.samples == 200'000);
    CHECK(e.seed == 2);
    CHECK(estimate_moment_decoupled(CoefficientTensor(2, 2, 2, 2.0), w1, w1, 3.0, mc(3)).value == 0.0);
    CHECK_THROWS_AS(estimate_moment_decoupled(one, w1, w1, 0.5, mc(3)), ConfigError);
}

TEST_CASE("single-index Gaussian fourth moment")
{
    // True Gaussian law: E g^4 = 3. The tail-form member (N = t^2) has E X^4 = 2.
    const std::vector<double> a{1.0};
    const auto g = make_distribution(Family::Gaussian, 2.0);
    const auto tail_form = gk_moment(a, g, 4.0, mc(4, 400'000));
    CHECK(within(tail_form, std::pow(2.0, 0.25)));
    const auto unit = gk_moment(a, make_distribution(Family::ExpPowerDensity, 2.0), 4.0, mc(4, 400'000, true));
    CHECK(within(unit, std::pow(3.0, 0.25)));
}

TEST_CASE("undecoupled moments")
{
    const auto w1 = make_distribution(Family::WeibullTail, 1.0);
    CHECK(estimate_moment_undecoupled(CoefficientTensor(2, 2, 1, 2.0), w1, 2.0, mc(5)).value == 0.0);
    const CoefficientTensor anti(2, 2, 1, 2.0, {0.0, 1.0, 1.0, 0.0});
    CHECK(within(estimate_moment_undecoupled(anti, w1, 2.0, mc(6, 200'000, true)), 2.0));
    const CoefficientTensor diag(2, 2, 1, 2.0, {1.0, 0.0, 0.0, 0.0});
    CHECK_THROWS_AS(estimate_moment_undecoupled(diag, w1, 2.0, mc(6)), ConfigError);
    const CoefficientTensor skew(2, 2, 1, 2.0, {0.0, 1.0, -1.0, 0.0});
    CHECK_THROWS_AS(estimate_moment_undecoupled(skew, w1, 2.0, mc(6)), ConfigError);
}

TEST_CASE("expectation at fixed x")
{
    const auto w1 = make_distribution(Family::WeibullTail, 1.0);
    const CoefficientTensor one(1, 1, 1, 3.0, {1.0});
    CHECK(estimate_E_norm_fixed_x(one, std::vector<double>{0.0}, w1, mc(7)).value == 0.0);
    for (auto d : {w1, make_distribution(Family::ExpPowerDensity, 1.5)}) {
        const auto e = estimate_E_norm_fixed_x(one, std::vector<double>{1.0}, d, mc(8, 200'000, true));
        CHECK(within(e, unit_abs_mean(d)));
    }
    Rng rng = make_stream(9, {1});
    std::vector<double> data(3 * 2 * 2);
    for (auto& v : data) v = standard_normal(rng);
    const CoefficientTensor a(3, 2, 2, 1.5, data);
    const std::vector<double> x{0.3, -1.0, 2.0}, x2{0.6, -2.0, 4.0};
    CHECK(estimate_E_norm_fixed_x(a, x2, w1, mc(10)).value ==
          doctest::Approx(2.0 * estimate_E_norm_fixed_x(a, x, w1, mc(10)).value).epsilon(1e-12));
    CHECK_THROWS_AS(estimate_E_norm_fixed_x(a, std::vector<double>{1.0}, w1, mc(10)), ConfigError);
}

TEST_CASE("one-dimensional moments")
{
    const auto g = make_distribution(Family::Gaussian, 2.0);
    CHECK(gk_moment(std::vector<double>{0.0, 0.0}, g, 2.0, mc(11)).value == 0.0);
    CHECK(within(gk_moment(std::vector<double>{1.0}, g, 2.0, mc(12, 200'000, true)), 1.0));
    const auto w1 = make_distribution(Family::WeibullTail, 1.0);
    CHECK(within(gk_moment(std::vector<double>{1.0}, w1, 4.0, mc(13, 800'000)), std::pow(24.0, 0.25)));
}

TEST_CASE("moment monotonicity on shared draws")
{
    const auto d = make_distribution(Family::ExpPowerDensity, 1.0);
    Rng rng = make_stream(14, {1});
    std::vector<double> data(3 * 3 * 2);
    for (auto& v : data) v = standard_normal(rng);
    const CoefficientTensor a(3, 3, 2, 2.0, data);
    const std::vector<double> ps{1.0, 1.5, 2.0, 3.0, 4.0, 6.0};
    const auto est = estimate_moments_decoupled(a, d, d, ps, mc(15, 64'000));
    for (std::size_t k = 1; k < est.size(); ++k) CHECK(est[k].value >= est[k - 1].value);
    // p and 2p differ by a bounded factor
    CHECK(est[4].value <= 4.0 * est[2].value);
    CHECK(est[5].value <= 4.0 * est[3].value);
    // the p = 6 row exceeds ln(N)/2 and is flagged
    CHECK(est[0].reliable);
    CHECK_FALSE(est[5].reliable);
    // single-p calls agree with the shared run
    CHECK(estimate_moment_decoupled(a, d, d, 3.0, mc(15, 64'000)).value == est[3].value);
}

TEST_CASE("thread count never changes results")
{
    const auto d = make_distribution(Family::WeibullTail, 1.5);
    Rng rng = make_stream(16, {1});
    std::vector<double> data(4 * 4 * 2);
    for (auto& v : data) v = standard_normal(rng);
    const CoefficientTensor a(4, 4, 2, 1.0, data);
    auto one = mc(17, 64'000);
    auto four = one;
    four.threads = 4;
    const auto e1 = estimate_moment_decoupled(a, d, d, 2.0, one);
    const auto e4 = estimate_moment_decoupled(a, d, d, 2.0, four);
    CHECK(e1.value == e4.value);
    CHECK(e1.std_error == e4.std_error);
    const std::vector<double> v{1.0, -2.0, 0.5};
    CHECK(gk_moment(v, d, 3.0, one).value == gk_moment(v, d, 3.0, four).value);
}

TEST_CASE("expected norm tracks the closed-form surrogate")
{
    Rng rng = make_stream(18, {1});
    for (double q : {1.0, 2.0, 3.0}) {
        std::vector<double> data(4 * 4 * 3);
        for (auto& v : data) v = standard_normal(rng);
        const CoefficientTensor a(4, 4, 3, q, data);
        const auto d = make_distribution(Family::WeibullTail, 1.0);
        const double s = s_A_surrogate(a);
        const auto lhs = estimate_moment_decoupled(a, d, d, 1.0, mc(19, 64'000, true));
        CHECK(lhs.value <= 8.0 * s);
        CHECK(s <= 8.0 * lhs.value);
        std::vector<double> x(4);
        for (auto& v : x) v = standard_normal(rng);
        const auto fixed = estimate_E_norm_fixed_x(a, x, d, mc(20, 64'000, true));
        const CoefficientTensor ax = [&] {
            CoefficientTensor out(1, 4, 3, q);
            for (std::size_t j = 0; j < 4; ++j)
                for (std::size_t k = 0; k < 3; ++k) {
                    double c = 0.0;
                    for (std::size_t i = 0; i < 4; ++i) c += a(i, j, k) * x[i];
                    out(0, j, k) = c;
                }
            return out;
        }();
        CHECK(fixed.value <= 6.0 * s_A_surrogate(ax));
        CHECK(s_A_surrogate(ax) <= 6.0 * fixed.value);
    }
}
