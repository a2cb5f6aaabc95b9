#pragma once

#include <span>
#include <vector>

#include "lctchaos/distribution.hpp"
#include "lctchaos/mc.hpp"
#include "lctchaos/tensor.hpp"

namespace lctchaos {

/// ||S'||_p = (E ||sum_ij a_ij X_i Y_j||_q^p)^{1/p} for each p in `ps`, all
/// from the same draws. Estimates with p > ln(N)/2 are marked unreliable.
std::vector<McEstimate> estimate_moments_decoupled(const CoefficientTensor& a, const TailDistribution& dist_x,
                                                   const TailDistribution& dist_y, std::span<const double> ps,
                                                   const McConfig& cfg);

McEstimate estimate_moment_decoupled(const CoefficientTensor& a, const TailDistribution& dist_x,
                                     const TailDistribution& dist_y, double p, const McConfig& cfg);

/// Same estimator for S = sum_ij a_ij X_i X_j with one X vector on both
/// indices. Every k-slice must be symmetric with zero diagonal.
std::vector<McEstimate> estimate_moments_undecoupled(const CoefficientTensor& a, const TailDistribution& dist_x,
                                                     std::span<const double> ps, const McConfig& cfg);

McEstimate estimate_moment_undecoupled(const CoefficientTensor& a, const TailDistribution& dist_x, double p,
                                       const McConfig& cfg);

/// E ||sum_ij a_ij x_i Y_j||_q at a fixed x in R^{n1}.
McEstimate estimate_E_norm_fixed_x(const CoefficientTensor& a, std::span<const double> x,
                                   const TailDistribution& dist_y, const McConfig& cfg);

/// (E |sum_i a_i X_i|^p)^{1/p} for each p, shared draws.
std::vector<McEstimate> gk_moments(std::span<const double> a, const TailDistribution& dist,
                                   std::span<const double> ps, const McConfig& cfg);

McEstimate gk_moment(std::span<const double> a, const TailDistribution& dist, double p, const McConfig& cfg);

}  // namespace lctchaos
