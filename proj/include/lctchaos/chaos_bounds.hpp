#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lctchaos/distribution.hpp"
#include "lctchaos/dual_norms.hpp"
#include "lctchaos/tensor.hpp"

namespace lctchaos {

/// Which two-sided estimate a report assembles.
enum class BoundKind {
    Lower,             ///< T1 + T2 + T3 + T4r + T4c + T5, valid in any Banach space
    UpperSubgaussian,  ///< gamma T1 + T2 + T3 + T4r + T5, Y subgaussian
    UpperGeneral,      ///< lower terms + T6
    TwoSidedExpPower,  ///< T1 + T2 + T3 + T4r + T5, densities C(r) exp(-|x|^r)
    Hilbert,           ///< T1 + T2 + T3 + T4r + T5 with q = 2
};

std::string_view kind_name(BoundKind kind) noexcept;
BoundKind parse_kind(std::string_view name);

enum class Side { Rows, Columns };

/// Term names in report order.
inline const std::vector<std::string> kTermNames = {"T1", "T2", "T3", "T4r", "T4c", "T5", "T6"};

/// Names of the terms `kind` sums.
std::vector<std::string> terms_of(BoundKind kind);

struct TermDiagnostics {
    bool converged = true;
    int restarts_used = 0;
};

struct BoundReport {
    BoundKind kind = BoundKind::Lower;
    std::map<std::string, double> terms;
    double total = 0.0;
    /// Set for UpperSubgaussian; multiplies T1 in the total.
    std::optional<double> gamma;
    double p = 1.0;
    double q = 2.0;
    double r = 1.0;
    std::size_t n1 = 0, n2 = 0, m = 0;
    std::map<std::string, TermDiagnostics> diagnostics;

    bool converged() const noexcept;
};

/// Closed form (sum_k (sum_ij a_ijk^2)^{q/2})^{1/q} standing in for E||S'||.
double term_T1_chaos_mean(const CoefficientTensor& a);

/// sup_{x in ballX} (sum_k (sum_j (sum_i a_ijk x_i)^2)^{q/2})^{1/q}.
/// `auxiliary` holds the aligned weights w (n2 x m, row-major).
NormResult term_T2_supx(const CoefficientTensor& a, const DualBall& ball_x, const SolverConfig& cfg = {});

/// Role-swapped T2 over ballY (length n2).
NormResult term_T3_supy(const CoefficientTensor& a, const DualBall& ball_y, const SolverConfig& cfg = {});

/// sup_{f in B_q'} ||(sqrt(sum_j f(a_ij)^2))_i||_{X,p} (rows) or its Y-side twin
/// with i and j exchanged (columns). `auxiliary` holds the maximizing f.
NormResult term_T4_sup_f_column(const CoefficientTensor& a, const DualBall& ball, Side side,
                                const SolverConfig& cfg = {});

/// sup_{f in B_q'} ||(f(a_ij))_ij||_{X,Y,p}. `auxiliary` holds f.
NormResult term_T5_sup_f_xyp(const CoefficientTensor& a, const DualBall& ball_x, const DualBall& ball_y,
                             const SolverConfig& cfg = {});

/// sup_{t in B_q'} ||M t||_2 for an n x m matrix M (the l_q' -> l_2 operator norm).
NormResult slice_operator_norm(const Matrix& slice, double q, const SolverConfig& cfg = {});

/// p max_i sup_{t in B_q'} sqrt(sum_j (sum_k a_ijk t_k)^2).
double term_T6_operator(const CoefficientTensor& a, double p, const SolverConfig& cfg = {});

/// ln E exp(t X); +inf where the moment generating function diverges.
double log_mgf(const TailDistribution& d, double t);

/// Smallest gamma with E exp(tX) <= exp(gamma t^2), evaluated on `grid_points`
/// log-spaced t in [1e-2, 30] together with the t -> 0 limit E X^2 / 2.
/// Empty when X is not subgaussian (r < 2, or the ratio keeps growing).
std::optional<double> subgaussian_gamma(const TailDistribution& d, int grid_points = 160);

/// Sum of the terms `kind` uses, gamma multiplying T1 when given.
/// Throws ConfigError if a needed term is missing.
double combine_terms(BoundKind kind, const std::map<std::string, double>& terms,
                     std::optional<double> gamma = std::nullopt);

/// Evaluates every term `kind` needs and sums them with no hidden constants.
BoundReport assemble_bound(const CoefficientTensor& a, BoundKind kind, double p, const TailDistribution& dist_x,
                           const TailDistribution& dist_y, const SolverConfig& cfg = {});

}  // namespace lctchaos
