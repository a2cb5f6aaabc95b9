#include "lctchaos/process.hpp"

#include <cmath>
#include <numbers>

#include "lctchaos/errors.hpp"

namespace lctchaos {

namespace {

void require_weights(const CoefficientTensor& a, const Matrix& w)
{
    if (w.rows() != a.n2() || w.cols() != a.m()) throw ConfigError("weight matrix must be n2 x m");
}

double contract_jk(const CoefficientTensor& a, std::size_t i, const Matrix& w)
{
    double s = 0.0;
    for (std::size_t j = 0; j < a.n2(); ++j)
        for (std::size_t k = 0; k < a.m(); ++k) s += a(i, j, k) * w(j, k);
    return s;
}

double unit_laplace(Rng& rng)
{
    return random_sign(rng) * (-std::log(uniform_open(rng))) / std::numbers::sqrt2;
}

}  // namespace

double alpha_A(const CoefficientTensor& a, const Matrix& w)
{
    require_weights(a, w);
    double s = 0.0;
    for (std::size_t i = 0; i < a.n1(); ++i) {
        const double c = contract_jk(a, i, w);
        s += c * c;
    }
    return std::sqrt(s);
}

double alpha_inf_A(const CoefficientTensor& a, const Matrix& w)
{
    require_weights(a, w);
    double best = 0.0;
    for (std::size_t i = 0; i < a.n1(); ++i) best = std::max(best, std::fabs(contract_jk(a, i, w)));
    return best;
}

double phi_A(const CoefficientTensor& a, std::span<const double> x)
{
    if (x.size() != a.n2()) throw ConfigError("phi_A: vector length must be n2");
    const double q = a.q();
    double outer = 0.0;
    for (std::size_t k = 0; k < a.m(); ++k) {
        double inner = 0.0;
        for (std::size_t i = 0; i < a.n1(); ++i) {
            double num = 0.0, den = 0.0;
            for (std::size_t j = 0; j < a.n2(); ++j) {
                num += a(i, j, k) * x[j];
                den += a(i, j, k) * a(i, j, k);
            }
            if (den > 0.0) inner += (num * num) * (num * num) / den;
        }
        outer += std::pow(inner, q / 2.0);
    }
    return std::pow(outer, 1.0 / (2.0 * q));
}

double s_A_surrogate(const CoefficientTensor& a)
{
    std::vector<double> slice_norms(a.m(), 0.0);
    for (std::size_t k = 0; k < a.m(); ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.n1(); ++i)
            for (std::size_t j = 0; j < a.n2(); ++j) s += a(i, j, k) * a(i, j, k);
        slice_norms[k] = std::sqrt(s);
    }
    return lq_norm(slice_norms, a.q());
}

Generator Generator::lct(const TailDistribution& d, const McConfig& cfg)
{
    return Generator{GeneratorLaw::Lct, d, cfg.unit_variance ? unit_variance_factor(d) : 1.0};
}

double Generator::draw(Rng& rng) const
{
    switch (law) {
    case GeneratorLaw::Exponential: return unit_laplace(rng);
    case GeneratorLaw::GaussianSquaredMinusOne: {
        const double g = standard_normal(rng);
        return random_sign(rng) * (g * g - 1.0);
    }
    case GeneratorLaw::GaussianProduct: {
        const double g = standard_normal(rng);
        return g * standard_normal(rng);
    }
    case GeneratorLaw::Gaussian: return standard_normal(rng);
    case GeneratorLaw::Lct: return lct_factor * sample_one(dist, rng);
    }
    return 0.0;
}

McEstimate mc_expected_sup(const std::vector<std::vector<double>>& points, const Generator& gen,
                           const McConfig& cfg)
{
    if (points.empty()) throw ConfigError("mc_expected_sup: empty index set");
    const std::size_t n = points.front().size();
    for (const auto& t : points) {
        if (t.size() != n) throw ConfigError("mc_expected_sup: points must share one dimension");
    }
    auto means = batch_means(cfg, 1, [&] {
        return [&, z = std::vector<double>(n)](Rng& rng, std::span<double> sums) mutable {
            for (auto& v : z) v = gen.draw(rng);
            double best = -std::numeric_limits<double>::infinity();
            for (const auto& t : points) best = std::max(best, dot(t, z));
            sums[0] += best;
        };
    });
    return mean_estimate(means, 0, cfg);
}

McEstimate mc_beta(const CoefficientTensor& a, std::span<const double> x, const McConfig& cfg)
{
    if (x.size() != a.n2()) throw ConfigError("mc_beta: vector length must be n2");
    // V_ik = sum_j a_ijk x_j; the sample is ||g^T V||_q.
    const Matrix v = a.contract_j(x);
    auto means = batch_means(cfg, 1, [&] {
        return [&, g = std::vector<double>(a.n1()), c = std::vector<double>(a.m())](
                   Rng& rng, std::span<double> sums) mutable {
            for (auto& e : g) e = standard_normal(rng);
            v.apply_transpose(g, c);
            sums[0] += lq_norm(c, a.q());
        };
    });
    return mean_estimate(means, 0, cfg);
}

McEstimate mc_expected_phi(const CoefficientTensor& a, const McConfig& cfg)
{
    auto means = batch_means(cfg, 1, [&] {
        return [&, e = std::vector<double>(a.n2())](Rng& rng, std::span<double> sums) mutable {
            for (auto& v : e) v = unit_laplace(rng);
            sums[0] += phi_A(a, e);
        };
    });
    return mean_estimate(means, 0, cfg);
}

McEstimate mc_expected_alpha(const CoefficientTensor& a, std::span<const double> t, const McConfig& cfg)
{
    if (t.size() != a.m()) throw ConfigError("mc_expected_alpha: t must have length m");
    // alpha_A(E (x) t) = ||F E|| with F_ij = sum_k a_ijk t_k.
    const Matrix f = a.contract_k(t);
    auto means = batch_means(cfg, 1, [&] {
        return [&, e = std::vector<double>(a.n2()), out = std::vector<double>(a.n1())](
                   Rng& rng, std::span<double> sums) mutable {
            for (auto& v : e) v = unit_laplace(rng);
            f.apply(e, out);
            sums[0] += norm2(out);
        };
    });
    return mean_estimate(means, 0, cfg);
}

}  // namespace lctchaos
