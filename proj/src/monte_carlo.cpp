#include "lctchaos/monte_carlo.hpp"

#include <cmath>

#include "lctchaos/errors.hpp"

namespace lctchaos {

namespace {

void require_orders(std::span<const double> ps)
{
    for (double p : ps) {
        if (!(p >= 1.0) || !std::isfinite(p)) throw ConfigError("moment order p must be >= 1");
    }
}

double draw_factor(const TailDistribution& d, const McConfig& cfg)
{
    return cfg.unit_variance ? unit_variance_factor(d) : 1.0;
}

void add_powers(double z, std::span<const double> ps, std::span<double> sums)
{
    const double az = std::fabs(z);
    for (std::size_t l = 0; l < ps.size(); ++l) {
        const double p = ps[l];
        sums[l] += p == 1.0 ? az : (p == 2.0 ? az * az : std::pow(az, p));
    }
}

std::vector<McEstimate> moments(const std::vector<std::vector<double>>& means, std::span<const double> ps,
                                const McConfig& cfg)
{
    std::vector<McEstimate> out;
    out.reserve(ps.size());
    for (std::size_t l = 0; l < ps.size(); ++l) out.push_back(moment_estimate(means, l, ps[l], cfg));
    return out;
}

}  // namespace

std::vector<McEstimate> estimate_moments_decoupled(const CoefficientTensor& a, const TailDistribution& dist_x,
                                                   const TailDistribution& dist_y, std::span<const double> ps,
                                                   const McConfig& cfg)
{
    require_orders(ps);
    const double fx = draw_factor(dist_x, cfg);
    const double fy = draw_factor(dist_y, cfg);
    const std::size_t n1 = a.n1(), n2 = a.n2(), m = a.m();
    const bool zero = a.is_zero();
    auto means = batch_means(cfg, ps.size(), [&] {
        return [&, x = std::vector<double>(n1), y = std::vector<double>(n2), s = std::vector<double>(m)](
                   Rng& rng, std::span<double> sums) mutable {
            for (auto& v : x) v = fx * sample_one(dist_x, rng);
            for (auto& v : y) v = fy * sample_one(dist_y, rng);
            if (zero) return;
            std::fill(s.begin(), s.end(), 0.0);
            for (std::size_t i = 0; i < n1; ++i)
                for (std::size_t j = 0; j < n2; ++j) {
                    const double w = x[i] * y[j];
                    for (std::size_t k = 0; k < m; ++k) s[k] += a(i, j, k) * w;
                }
            add_powers(lq_norm(s, a.q()), ps, sums);
        };
    });
    return moments(means, ps, cfg);
}

McEstimate estimate_moment_decoupled(const CoefficientTensor& a, const TailDistribution& dist_x,
                                     const TailDistribution& dist_y, double p, const McConfig& cfg)
{
    const double ps[] = {p};
    return estimate_moments_decoupled(a, dist_x, dist_y, ps, cfg).front();
}

std::vector<McEstimate> estimate_moments_undecoupled(const CoefficientTensor& a, const TailDistribution& dist_x,
                                                     std::span<const double> ps, const McConfig& cfg)
{
    require_orders(ps);
    if (a.n1() != a.n2()) throw ConfigError("undecoupled chaos needs a square coefficient array");
    const std::size_t n = a.n1(), m = a.m();
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            if (a(i, i, k) != 0.0) throw ConfigError("undecoupled chaos requires a zero diagonal");
            for (std::size_t j = i + 1; j < n; ++j) {
                if (a(i, j, k) != a(j, i, k)) throw ConfigError("undecoupled chaos requires symmetric slices");
            }
        }
    const double fx = draw_factor(dist_x, cfg);
    auto means = batch_means(cfg, ps.size(), [&] {
        return [&, x = std::vector<double>(n), s = std::vector<double>(m)](Rng& rng,
                                                                          std::span<double> sums) mutable {
            for (auto& v : x) v = fx * sample_one(dist_x, rng);
            std::fill(s.begin(), s.end(), 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    const double w = x[i] * x[j];
                    for (std::size_t k = 0; k < m; ++k) s[k] += a(i, j, k) * w;
                }
            add_powers(lq_norm(s, a.q()), ps, sums);
        };
    });
    return moments(means, ps, cfg);
}

McEstimate estimate_moment_undecoupled(const CoefficientTensor& a, const TailDistribution& dist_x, double p,
                                       const McConfig& cfg)
{
    const double ps[] = {p};
    return estimate_moments_undecoupled(a, dist_x, ps, cfg).front();
}

McEstimate estimate_E_norm_fixed_x(const CoefficientTensor& a, std::span<const double> x,
                                   const TailDistribution& dist_y, const McConfig& cfg)
{
    if (x.size() != a.n1()) throw ConfigError("estimate_E_norm_fixed_x: x must have length n1");
    const Matrix w = a.contract_i(x);  // n2 x m
    const double fy = draw_factor(dist_y, cfg);
    auto means = batch_means(cfg, 1, [&] {
        return [&, y = std::vector<double>(a.n2()), s = std::vector<double>(a.m())](
                   Rng& rng, std::span<double> sums) mutable {
            for (auto& v : y) v = fy * sample_one(dist_y, rng);
            w.apply_transpose(y, s);
            sums[0] += lq_norm(s, a.q());
        };
    });
    return mean_estimate(means, 0, cfg);
}

std::vector<McEstimate> gk_moments(std::span<const double> a, const TailDistribution& dist,
                                   std::span<const double> ps, const McConfig& cfg)
{
    require_orders(ps);
    const double f = draw_factor(dist, cfg);
    auto means = batch_means(cfg, ps.size(), [&] {
        return [&](Rng& rng, std::span<double> sums) {
            double z = 0.0;
            for (double coef : a) z += coef * f * sample_one(dist, rng);
            add_powers(z, ps, sums);
        };
    });
    return moments(means, ps, cfg);
}

McEstimate gk_moment(std::span<const double> a, const TailDistribution& dist, double p, const McConfig& cfg)
{
    const double ps[] = {p};
    return gk_moments(a, dist, ps, cfg).front();
}

}  // namespace lctchaos
