#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lctchaos/rng.hpp"

namespace lctchaos {

/// Symmetric log-concave-tail families.
///
/// WeibullTail(r):     P(|X| >= t) = exp(-t^r).
/// ExpPowerDensity(r): density proportional to exp(-|x|^r), so the raw tail is
///                     Q(1/r, t^r) with Q the regularized upper incomplete gamma.
/// Gaussian:           tail form N(t) = t^2, i.e. WeibullTail(2).
enum class Family { WeibullTail, ExpPowerDensity, Gaussian };

std::string_view family_name(Family family) noexcept;
Family parse_family(std::string_view name);

/// A member of one of the families, rescaled so that P(|X| >= 1) = 1/e.
///
/// The normalized variable is raw / scale, where `scale` is the raw quantile
/// solving P(|raw| >= scale) = 1/e.
struct TailDistribution {
    Family family = Family::WeibullTail;
    double r = 1.0;
    double scale = 1.0;
    bool normalized = false;

    friend bool operator==(const TailDistribution&, const TailDistribution&) = default;
};

/// Builds the normalized member of `family` with shape r >= 1. The Gaussian
/// family ignores `r` and uses r = 2.
TailDistribution make_distribution(Family family, double r);

/// P(|X| >= t) of the normalized variable, t >= 0.
double survival(const TailDistribution& d, double t);
double log_survival(const TailDistribution& d, double t);

/// N(t) = -ln P(|X| >= t); convex, N(1) = 1 after normalization.
double tail_N(const TailDistribution& d, double t);

/// Right derivative N'(t) (the hazard rate of |X|), t >= 0.
double tail_N_derivative(const TailDistribution& d, double t);

/// Smallest t >= 0 with N(t) = y, y >= 0.
double tail_N_inverse(const TailDistribution& d, double y);

/// t^2 on [-1, 1], N(|t|) outside.
double hat_N(const TailDistribution& d, double t);

/// True when N is affine on [0, inf) (the r = 1 members, N(t) = t).
bool has_linear_tail(const TailDistribution& d) noexcept;

double sample_one(const TailDistribution& d, Rng& rng);
std::vector<double> sample(const TailDistribution& d, Rng& rng, std::size_t count);

/// E X^k by quadrature of k t^{k-1} P(|X| >= t). Odd k returns 0 (symmetry).
double raw_moment(const TailDistribution& d, int k);

/// 1 / sqrt(E X^2): multiply draws by this to get the unit-variance view.
double unit_variance_factor(const TailDistribution& d);

/// Regularized upper incomplete gamma in log form, stable for large x.
double log_gamma_q(double a, double x);

}  // namespace lctchaos
