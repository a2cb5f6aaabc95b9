#pragma once

#include <span>
#include <vector>

#include "lctchaos/distribution.hpp"
#include "lctchaos/matrix.hpp"
#include "lctchaos/mc.hpp"
#include "lctchaos/tensor.hpp"

namespace lctchaos {

/// alpha_A(w) = sqrt(sum_i (sum_jk a_ijk w_jk)^2), w of shape n2 x m.
double alpha_A(const CoefficientTensor& a, const Matrix& w);

/// max_i |sum_jk a_ijk w_jk|.
double alpha_inf_A(const CoefficientTensor& a, const Matrix& w);

/// (sum_k (sum_i (sum_j a_ijk x_j)^4 / sum_j a_ijk^2)^{q/2})^{1/(2q)};
/// fibers with sum_j a_ijk^2 = 0 contribute nothing.
double phi_A(const CoefficientTensor& a, std::span<const double> x);

/// (sum_k (sum_ij a_ijk^2)^{q/2})^{1/q}: the closed form equivalent to the
/// expected l_q norm of a unit-variance chaos.
double s_A_surrogate(const CoefficientTensor& a);

/// Variables driving mc_expected_sup.
enum class GeneratorLaw {
    Exponential,             ///< symmetric exponential scaled to unit variance
    GaussianSquaredMinusOne, ///< eps (g^2 - 1) with an independent Rademacher sign
    GaussianProduct,         ///< g g'
    Gaussian,                ///< plain standard normal
    Lct,                     ///< draws from a TailDistribution
};

struct Generator {
    GeneratorLaw law = GeneratorLaw::Gaussian;
    TailDistribution dist{};  ///< used by GeneratorLaw::Lct
    double lct_factor = 1.0;  ///< multiplier applied to Lct draws

    static Generator of(GeneratorLaw law) { return Generator{law, {}, 1.0}; }
    /// Lct generator honoring cfg.unit_variance.
    static Generator lct(const TailDistribution& d, const McConfig& cfg);

    double draw(Rng& rng) const;
};

/// E sup_{t in T} sum_i t_i Z_i with Z_i i.i.d. from `gen`.
McEstimate mc_expected_sup(const std::vector<std::vector<double>>& points, const Generator& gen,
                           const McConfig& cfg);

/// E sup_{t in B_q'} |sum_ijk a_ijk g_i x_j t_k| = E ||(sum_i g_i sum_j a_ijk x_j)_k||_q.
McEstimate mc_beta(const CoefficientTensor& a, std::span<const double> x, const McConfig& cfg);

/// E phi_A(E) for E a unit-variance symmetric exponential vector in R^{n2}.
McEstimate mc_expected_phi(const CoefficientTensor& a, const McConfig& cfg);

/// E alpha_A(E (x) t) with E as in mc_expected_phi and t in R^m.
McEstimate mc_expected_alpha(const CoefficientTensor& a, std::span<const double> t, const McConfig& cfg);

}  // namespace lctchaos
