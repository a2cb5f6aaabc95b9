#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "lctchaos/distribution.hpp"
#include "lctchaos/matrix.hpp"
#include "lctchaos/rng.hpp"

namespace lctchaos {

/// Tolerances shared by every iterative solver in the library.
struct SolverConfig {
    double step_tolerance = 1e-9;  ///< relative improvement that ends an alternating run
    double root_tolerance = 1e-12;
    int max_iterations = 200;
    int restarts = 16;
    std::uint64_t seed = 0x5eed'1ce5ULL;  ///< restart points are drawn from this stream
};

/// The body {x : sum_i hat_N_i(x_i) <= p}. Its support function is the
/// moment norm ||.||_{X,p}.
struct DualBall {
    double p = 1.0;
    std::vector<TailDistribution> tails;

    static DualBall uniform(const TailDistribution& d, std::size_t n, double p);

    std::size_t size() const noexcept { return tails.size(); }
    bool identical_tails() const noexcept;
    double budget(std::span<const double> x) const;
};

struct NormResult {
    double value = 0.0;
    std::vector<double> maximizer;  ///< witness; concatenated (x, y) for bilinear norms
    std::vector<double> auxiliary;  ///< functional f / weights w where applicable
    bool converged = true;
    int restarts_used = 0;
    /// Lagrangian dual of the convex piece holding the optimum (norm_Xp only).
    double dual_value = std::numeric_limits<double>::quiet_NaN();
    /// Objective after every step of the winning run.
    std::vector<double> trace;
};

struct Conjugate {
    double value = 0.0;
    double argmax = 0.0;
    bool bounded = true;
};

/// sup_x (a x - lambda hat_N(x)) and its maximizer. For r = 1 tails and
/// lambda < |a| the supremum is +inf and `bounded` is false.
Conjugate conjugate_1d(const TailDistribution& d, double a, double lambda);

struct Membership {
    bool inside = false;
    double slack = 0.0;
};

Membership ball_membership(std::span<const double> x, const DualBall& ball);

/// ||a||_{X,p} = sup { <a, x> : x in ball }.
///
/// The ball is convex only when hat_N is (N'(1) >= 2). In general the optimum
/// is found by fixing which coordinates leave [-1, 1]; on each such piece the
/// problem is convex and is solved through its one-dimensional Lagrangian dual.
/// For identical tails only the pieces "top-k |a_i| outside" can be optimal.
NormResult norm_Xp(std::span<const double> a, const DualBall& ball, const SolverConfig& cfg = {});

/// ||A||_{X,Y,p} = sup { x^T A y : x in ballX, y in ballY } by alternating exact
/// maximization with multi-start; the value is a lower bound of the true norm.
NormResult norm_XYp(const Matrix& a, const DualBall& ball_x, const DualBall& ball_y,
                    const SolverConfig& cfg = {});

/// Unit dominant right singular vector of `a` by power iteration on A^T A.
std::vector<double> dominant_right_singular_vector(const Matrix& a);

/// Point of the ball boundary on the ray through `direction`.
std::vector<double> boundary_point(const DualBall& ball, std::span<const double> direction);

/// Boundary point in a uniformly random direction.
std::vector<double> random_boundary_point(const DualBall& ball, Rng& rng);

/// Boundary-dense point cloud used by the brute-force oracles (n <= 3,
/// resolution <= 1e-2). Includes the strata where coordinates sit at +-1.
std::vector<std::vector<double>> boundary_grid(const DualBall& ball, double resolution);

double brute_norm_Xp(std::span<const double> a, const DualBall& ball, double resolution);
double brute_norm_XYp(const Matrix& a, const DualBall& ball_x, const DualBall& ball_y,
                      double resolution);

}  // namespace lctchaos
