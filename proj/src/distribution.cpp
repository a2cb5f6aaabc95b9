#include "lctchaos/distribution.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/roots.hpp>

#include "lctchaos/errors.hpp"

namespace lctchaos {

namespace {

constexpr double kInvE = 0.36787944117144233;

bool is_weibull_form(const TailDistribution& d) noexcept
{
    return d.family != Family::ExpPowerDensity;
}

// Lentz evaluation of the Legendre continued fraction for Gamma(a, x) e^x x^{-a}.
double log_upper_gamma_cf(double a, double x)
{
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double dd = 1.0 / b;
    double h = dd;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        dd = an * dd + b;
        if (std::fabs(dd) < tiny) dd = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        dd = 1.0 / dd;
        const double delta = dd * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return -x + a * std::log(x) + std::log(h) - std::lgamma(a);
}

double raw_exp_power_log_survival(double r, double t)
{
    const double z = std::pow(t, r);
    return log_gamma_q(1.0 / r, z);
}

}  // namespace

std::string_view family_name(Family family) noexcept
{
    switch (family) {
    case Family::WeibullTail: return "weibull";
    case Family::ExpPowerDensity: return "exp_power";
    case Family::Gaussian: return "gaussian";
    }
    return "unknown";
}

Family parse_family(std::string_view name)
{
    if (name == "weibull" || name == "weibull_tail") return Family::WeibullTail;
    if (name == "exp_power" || name == "exp_power_density") return Family::ExpPowerDensity;
    if (name == "gaussian") return Family::Gaussian;
    throw ConfigError("unknown distribution family '" + std::string(name) + "'");
}

double log_gamma_q(double a, double x)
{
    if (x <= 0.0) return 0.0;
    if (x < 600.0) {
        const double q = boost::math::gamma_q(a, x);
        if (q > 1e-280) return std::log(q);
    }
    return log_upper_gamma_cf(a, x);
}

TailDistribution make_distribution(Family family, double r)
{
    if (family == Family::Gaussian) r = 2.0;
    if (!(r >= 1.0) || !std::isfinite(r)) {
        throw DomainError("shape exponent r must be >= 1, got " + std::to_string(r));
    }
    TailDistribution d{family, r, 1.0, true};
    if (family != Family::ExpPowerDensity || r == 1.0) return d;

    // Root of log Q(1/r, s^r) = -1; the left side is decreasing in s.
    auto f = [r](double s) { return raw_exp_power_log_survival(r, s) + 1.0; };
    double lo = 0.05, hi = 4.0;
    while (f(hi) > 0.0) hi *= 2.0;
    while (f(lo) < 0.0) lo *= 0.5;
    std::uintmax_t iters = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(
        f, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
    if (iters >= 200) throw NumericError("normalization root finder did not converge");
    d.scale = 0.5 * (a + b);
    return d;
}

double log_survival(const TailDistribution& d, double t)
{
    if (t < 0.0) throw DomainError("survival requires t >= 0");
    if (is_weibull_form(d)) return -std::pow(t, d.r);
    if (d.r == 1.0) return -t;
    return raw_exp_power_log_survival(d.r, d.scale * t);
}

double survival(const TailDistribution& d, double t) { return std::exp(log_survival(d, t)); }

double tail_N(const TailDistribution& d, double t)
{
    if (t < 0.0) throw DomainError("tail function requires t >= 0");
    return -log_survival(d, t);
}

double tail_N_derivative(const TailDistribution& d, double t)
{
    if (t < 0.0) throw DomainError("tail derivative requires t >= 0");
    if (is_weibull_form(d)) return d.r == 1.0 ? 1.0 : d.r * std::pow(t, d.r - 1.0);
    if (d.r == 1.0) return 1.0;
    // hazard of the normalized variable: r s e^{-z} / (Gamma(1/r) Q(1/r, z)), z = (s t)^r
    const double z = std::pow(d.scale * t, d.r);
    const double a = 1.0 / d.r;
    return std::exp(std::log(d.r * d.scale) - z - std::lgamma(a) - log_gamma_q(a, z));
}

double tail_N_inverse(const TailDistribution& d, double y)
{
    if (y < 0.0) throw DomainError("tail inverse requires y >= 0");
    if (y == 0.0) return 0.0;
    if (is_weibull_form(d)) return d.r == 1.0 ? y : std::pow(y, 1.0 / d.r);
    if (d.r == 1.0) return y;
    const double a = 1.0 / d.r;
    if (y < 600.0) {
        return std::pow(boost::math::gamma_q_inv(a, std::exp(-y)), a) / d.scale;
    }
    auto f = [&](double t) { return tail_N(d, t) - y; };
    double lo = 1.0, hi = 2.0;
    while (f(hi) < 0.0) hi *= 2.0;
    std::uintmax_t iters = 200;
    const auto [u, v] = boost::math::tools::toms748_solve(
        f, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
    return 0.5 * (u + v);
}

double hat_N(const TailDistribution& d, double t)
{
    const double a = std::fabs(t);
    return a <= 1.0 ? a * a : tail_N(d, a);
}

bool has_linear_tail(const TailDistribution& d) noexcept
{
    return d.family != Family::Gaussian && d.r == 1.0;
}

double sample_one(const TailDistribution& d, Rng& rng)
{
    const double sign = random_sign(rng);
    const double u = uniform_open(rng);
    double magnitude;
    if (is_weibull_form(d) || d.r == 1.0) {
        const double e = -std::log(u);
        magnitude = d.r == 1.0 ? e : (d.r == 2.0 ? std::sqrt(e) : std::pow(e, 1.0 / d.r));
    } else if (d.r == 2.0) {
        magnitude = boost::math::erfc_inv(u) / d.scale;
    } else {
        const double a = 1.0 / d.r;
        magnitude = std::pow(boost::math::gamma_q_inv(a, u), a) / d.scale;
    }
    return sign * magnitude;
}

std::vector<double> sample(const TailDistribution& d, Rng& rng, std::size_t count)
{
    std::vector<double> out(count);
    for (auto& v : out) v = sample_one(d, rng);
    return out;
}

double raw_moment(const TailDistribution& d, int k)
{
    if (k < 1) throw DomainError("raw_moment requires k >= 1");
    if (k % 2 == 1) return 0.0;
    auto integrand = [&](double t) {
        if (t <= 0.0) return 0.0;
        return k * std::exp((k - 1) * std::log(t) + log_survival(d, t));
    };
    // The integrand is negligible beyond N(t) = 800 + k ln t.
    const double upper = tail_N_inverse(d, 800.0);
    double error = 0.0;
    const double lo_part = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, 0.0, 1.0, 15, 1e-13, &error);
    const double hi_part = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, 1.0, upper, 20, 1e-13, &error);
    return lo_part + hi_part;
}

double unit_variance_factor(const TailDistribution& d) { return 1.0 / std::sqrt(raw_moment(d, 2)); }

}  // namespace lctchaos
