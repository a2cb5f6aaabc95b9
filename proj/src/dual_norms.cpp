#include "lctchaos/dual_norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/tools/roots.hpp>

#include "lctchaos/errors.hpp"

namespace lctchaos {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_normalized(const DualBall& ball)
{
    for (const auto& d : ball.tails) {
        if (!d.normalized) throw ConfigError("dual ball built from a non-normalized distribution");
    }
    if (!(ball.p > 0.0)) throw ConfigError("dual ball level p must be positive");
}

// t >= 1 maximizing h t - N(t) on [1, inf), for tails with strictly convex N.
double tail_argmax(const TailDistribution& d, double h)
{
    if (h <= tail_N_derivative(d, 1.0)) return 1.0;
    if (d.family != Family::ExpPowerDensity) return std::pow(h / d.r, 1.0 / (d.r - 1.0));
    double lo = 1.0, hi = 2.0;
    while (tail_N_derivative(d, hi) < h) {
        lo = hi;
        hi *= 2.0;
    }
    auto f = [&](double t) { return tail_N_derivative(d, t) - h; };
    std::uintmax_t iters = 100;
    const auto [u, v] = boost::math::tools::toms748_solve(
        f, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (u + v);
}

struct Response {
    double x = 0.0;
    double budget = 0.0;
    double conj = 0.0;
};

// Maximizer of b x - lambda hat_N(x) restricted to [0, 1] (quadratic piece) or
// [1, inf) (tail piece). Linear tails respond with x = 1; the caller keeps
// lambda >= b for them.
Response respond(const TailDistribution& d, double b, double lambda, bool tail)
{
    Response r;
    if (!tail) {
        r.x = lambda > 0.0 ? std::min(b / (2.0 * lambda), 1.0) : (b > 0.0 ? 1.0 : 0.0);
        r.budget = r.x * r.x;
        r.conj = b * r.x - lambda * r.budget;
        return r;
    }
    r.x = has_linear_tail(d) ? 1.0 : tail_argmax(d, b / lambda);
    r.budget = tail_N(d, r.x);
    r.conj = b * r.x - lambda * r.budget;
    return r;
}

struct Piece {
    bool feasible = false;
    double value = 0.0;
    double dual = 0.0;
    std::vector<double> x;
};

// sup sum b_i x_i over the convex piece where coordinates with tail[i] lie in
// [1, inf) and the others in [0, 1], subject to sum hat_N(x_i) <= p.
Piece solve_piece(std::span<const double> b, const std::vector<TailDistribution>& tails,
                  const std::vector<char>& tail, double p)
{
    const std::size_t n = b.size();
    Piece piece;
    const auto k = static_cast<double>(std::count(tail.begin(), tail.end(), 1));
    if (k > p * (1.0 + 1e-14)) return piece;
    piece.feasible = true;
    piece.x.assign(n, 0.0);

    if (p - k <= 1e-14 * p) {
        // Only the corner (1 on the tail set, 0 elsewhere) is feasible.
        for (std::size_t i = 0; i < n; ++i) {
            if (tail[i]) piece.x[i] = 1.0;
            piece.value += b[i] * piece.x[i];
        }
        piece.dual = piece.value;
        return piece;
    }

    bool has_linear = false;
    bool has_curved_tail = false;
    double lambda_lo = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!tail[i]) continue;
        if (has_linear_tail(tails[i])) {
            has_linear = true;
            lambda_lo = std::max(lambda_lo, b[i]);
        } else {
            has_curved_tail = true;
        }
    }

    std::vector<Response> resp(n);
    auto evaluate = [&](double lambda) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            resp[i] = respond(tails[i], b[i], lambda, tail[i] != 0);
            total += resp[i].budget;
        }
        return total;
    };
    auto finish = [&](double lambda) {
        piece.value = 0.0;
        piece.dual = lambda * p;
        for (std::size_t i = 0; i < n; ++i) {
            piece.x[i] = resp[i].x;
            piece.value += b[i] * resp[i].x;
            piece.dual += resp[i].conj;
        }
    };

    const bool finite_at_lo = lambda_lo > 0.0 || !has_curved_tail;
    if (finite_at_lo) {
        const double used = evaluate(lambda_lo);
        if (used <= p) {
            if (has_linear) {
                // Indifferent linear coordinates absorb the leftover budget.
                for (std::size_t i = 0; i < n; ++i) {
                    if (tail[i] && has_linear_tail(tails[i]) && b[i] == lambda_lo) {
                        resp[i].x += p - used;
                        resp[i].conj = 0.0;
                        break;
                    }
                }
            }
            finish(lambda_lo);
            return piece;
        }
    }

    const double b_max = *std::max_element(b.begin(), b.end());
    double hi = std::max({lambda_lo, b_max, 1e-300}) * 2.0;
    for (int guard = 0; evaluate(hi) > p; ++guard) {
        if (guard > 4000) throw NumericError("norm_Xp: failed to bracket the multiplier");
        hi *= 2.0;
    }
    double lo = lambda_lo;
    if (lo <= 0.0) {
        lo = hi;
        for (int guard = 0; evaluate(lo) <= p; ++guard) {
            if (guard > 4000) throw NumericError("norm_Xp: failed to bracket the multiplier");
            hi = lo;
            lo *= 0.5;
        }
    }
    auto g = [&](double log_lambda) { return evaluate(std::exp(log_lambda)) - p; };
    // exp(log(x)) can differ from x in the last bit, so the bracket signs are
    // taken at the log-space endpoints; an endpoint already on the boundary wins.
    const double log_lo = std::log(lo), log_hi = std::log(hi);
    const double g_lo = g(log_lo), g_hi = g(log_hi);
    double lambda;
    if (g_hi >= 0.0) {
        lambda = g_hi == 0.0 ? std::exp(log_hi) : hi;
    } else if (g_lo <= 0.0) {
        lambda = std::exp(log_lo);
    } else {
        std::uintmax_t iters = 200;
        const auto bracket = boost::math::tools::toms748_solve(g, log_lo, log_hi, g_lo, g_hi,
                                                               boost::math::tools::eps_tolerance<double>(52), iters);
        lambda = std::exp(bracket.second);
    }
    if (evaluate(lambda) > p) {
        lambda = hi;
        evaluate(lambda);
    }
    finish(lambda);
    return piece;
}

}  // namespace

std::vector<double> dominant_right_singular_vector(const Matrix& a)
{
    std::vector<double> v(a.cols());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = 1.0 + 0.01 * static_cast<double>(j);
    std::vector<double> u(a.rows());
    for (int it = 0; it < 200; ++it) {
        a.apply(v, u);
        a.apply_transpose(u, v);
        const double nv = norm2(v);
        if (nv == 0.0) break;
        for (auto& e : v) e /= nv;
    }
    return v;
}

namespace {

bool all_zero(std::span<const double> v)
{
    return std::all_of(v.begin(), v.end(), [](double e) { return e == 0.0; });
}

}  // namespace

DualBall DualBall::uniform(const TailDistribution& d, std::size_t n, double p)
{
    return DualBall{p, std::vector<TailDistribution>(n, d)};
}

bool DualBall::identical_tails() const noexcept
{
    return std::adjacent_find(tails.begin(), tails.end(), std::not_equal_to<>()) == tails.end();
}

double DualBall::budget(std::span<const double> x) const
{
    if (x.size() != tails.size()) throw ConfigError("point dimension does not match the ball");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += hat_N(tails[i], x[i]);
    return s;
}

Conjugate conjugate_1d(const TailDistribution& d, double a, double lambda)
{
    if (!(lambda > 0.0)) throw DomainError("conjugate_1d requires lambda > 0");
    const double b = std::fabs(a);
    const double sign = a < 0.0 ? -1.0 : 1.0;
    if (b == 0.0) return {0.0, 0.0, true};
    if (has_linear_tail(d) && b > lambda) return {kInf, sign * kInf, false};

    const Response quad = respond(d, b, lambda, false);
    const Response tail = respond(d, b, lambda, true);
    const Response& best = tail.conj > quad.conj ? tail : quad;
    return {best.conj, sign * best.x, true};
}

Membership ball_membership(std::span<const double> x, const DualBall& ball)
{
    const double slack = ball.p - ball.budget(x);
    return {slack >= 0.0, slack};
}

NormResult norm_Xp(std::span<const double> a, const DualBall& ball, const SolverConfig&)
{
    if (a.size() != ball.size()) throw ConfigError("norm_Xp: coefficient length does not match the ball");
    NormResult result;
    result.restarts_used = 1;
    const std::size_t n = a.size();
    result.maximizer.assign(n, 0.0);
    if (n == 0) {
        result.dual_value = 0.0;
        return result;
    }
    require_normalized(ball);

    std::vector<double> b(n);
    std::transform(a.begin(), a.end(), b.begin(), [](double v) { return std::fabs(v); });
    if (all_zero(b)) {
        result.dual_value = 0.0;
        return result;
    }

    const auto k_max = static_cast<std::size_t>(
        std::min<double>(static_cast<double>(n), std::floor(ball.p * (1.0 + 1e-14))));
    Piece best;
    auto consider = [&](const std::vector<char>& tail) {
        Piece piece = solve_piece(b, ball.tails, tail, ball.p);
        if (piece.feasible && (!best.feasible || piece.value > best.value)) best = std::move(piece);
    };

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return b[i] > b[j]; });
    auto top_k = [&](std::size_t k) {
        std::vector<char> tail(n, 0);
        for (std::size_t i = 0; i < k; ++i) tail[order[i]] = 1;
        return tail;
    };

    constexpr std::size_t kSubsetCap = std::size_t{1} << 16;
    if (ball.identical_tails() || n >= 24 || (std::size_t{1} << n) > kSubsetCap) {
        for (std::size_t k = 0; k <= k_max; ++k) consider(top_k(k));
        result.converged = ball.identical_tails();
    } else {
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) > k_max) continue;
            std::vector<char> tail(n);
            for (std::size_t i = 0; i < n; ++i) tail[i] = (mask >> i) & 1U;
            consider(tail);
        }
    }

    result.value = best.value;
    result.dual_value = best.dual;
    for (std::size_t i = 0; i < n; ++i) result.maximizer[i] = a[i] < 0.0 ? -best.x[i] : best.x[i];
    result.trace = {result.value};
    return result;
}

NormResult norm_XYp(const Matrix& a, const DualBall& ball_x, const DualBall& ball_y,
                    const SolverConfig& cfg)
{
    if (a.rows() != ball_x.size() || a.cols() != ball_y.size()) {
        throw ConfigError("norm_XYp: matrix shape does not match the balls");
    }
    if (cfg.restarts < 1) throw ConfigError("norm_XYp: restarts must be >= 1");
    require_normalized(ball_x);
    require_normalized(ball_y);

    const std::size_t n1 = a.rows(), n2 = a.cols();
    NormResult best;
    best.maximizer.assign(n1 + n2, 0.0);
    if (a.is_zero() || n1 == 0 || n2 == 0) return best;

    Rng rng = make_stream(cfg.seed, {0x9e7, n1, n2});
    std::vector<std::vector<double>> starts;
    starts.push_back(boundary_point(ball_y, dominant_right_singular_vector(a)));
    for (int s = 0; s < cfg.restarts; ++s) starts.push_back(random_boundary_point(ball_y, rng));

    std::vector<double> cx(n1), cy(n2);
    bool have_best = false;
    for (std::size_t s = 0; s < starts.size(); ++s) {
        std::vector<double> y = starts[s];
        std::vector<double> x(n1, 0.0);
        std::vector<double> trace;
        double value = -kInf;
        bool converged = false;
        for (int it = 0; it < cfg.max_iterations; ++it) {
            a.apply(y, cx);
            x = norm_Xp(cx, ball_x, cfg).maximizer;
            a.apply_transpose(x, cy);
            NormResult ry = norm_Xp(cy, ball_y, cfg);
            y = std::move(ry.maximizer);
            const double prev = value;
            value = ry.value;
            trace.push_back(value);
            if (it > 0 && value - prev <= cfg.step_tolerance * std::max(std::fabs(value), 1e-300)) {
                converged = true;
                break;
            }
        }
        if (!have_best || value > best.value) {
            have_best = true;
            best.value = value;
            best.converged = converged;
            best.trace = std::move(trace);
            std::copy(x.begin(), x.end(), best.maximizer.begin());
            std::copy(y.begin(), y.end(), best.maximizer.begin() + static_cast<std::ptrdiff_t>(n1));
        }
    }
    best.restarts_used = static_cast<int>(starts.size());
    return best;
}

std::vector<double> boundary_point(const DualBall& ball, std::span<const double> direction)
{
    if (direction.size() != ball.size()) throw ConfigError("direction dimension does not match the ball");
    if (all_zero(direction)) throw DomainError("boundary_point requires a nonzero direction");
    auto g = [&](double rho) {
        double s = 0.0;
        for (std::size_t i = 0; i < direction.size(); ++i) s += hat_N(ball.tails[i], rho * direction[i]);
        return s - ball.p;
    };
    double hi = 1.0 / norm_inf(direction);
    while (g(hi) < 0.0) hi *= 2.0;
    std::uintmax_t iters = 200;
    const auto [u, v] = boost::math::tools::toms748_solve(
        g, 0.0, hi, boost::math::tools::eps_tolerance<double>(52), iters);
    // Keep the feasible end so the point is inside the ball.
    const double rho = g(v) <= 0.0 ? v : u;
    std::vector<double> x(direction.begin(), direction.end());
    for (auto& e : x) e *= rho;
    return x;
}

std::vector<double> random_boundary_point(const DualBall& ball, Rng& rng)
{
    std::vector<double> dir(ball.size());
    do {
        for (auto& e : dir) e = standard_normal(rng);
    } while (all_zero(dir));
    return boundary_point(ball, dir);
}

namespace {

std::vector<std::vector<double>> sphere_directions(std::size_t dim, double h)
{
    std::vector<std::vector<double>> dirs;
    const double two_pi = 2.0 * std::numbers::pi;
    if (dim == 1) {
        dirs = {{1.0}, {-1.0}};
    } else if (dim == 2) {
        const auto count = static_cast<std::size_t>(std::ceil(two_pi / h));
        for (std::size_t i = 0; i < count; ++i) {
            const double t = two_pi * static_cast<double>(i) / static_cast<double>(count);
            dirs.push_back({std::cos(t), std::sin(t)});
        }
    } else if (dim == 3) {
        const auto polar = static_cast<std::size_t>(std::ceil(std::numbers::pi / h)) + 1;
        for (std::size_t i = 0; i < polar; ++i) {
            const double th = std::numbers::pi * static_cast<double>(i) / static_cast<double>(polar - 1);
            const auto around = std::max<std::size_t>(
                1, static_cast<std::size_t>(std::ceil(two_pi * std::sin(th) / h)));
            for (std::size_t j = 0; j < around; ++j) {
                const double ph = two_pi * static_cast<double>(j) / static_cast<double>(around);
                dirs.push_back({std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)});
            }
        }
    }
    return dirs;
}

}  // namespace

std::vector<std::vector<double>> boundary_grid(const DualBall& ball, double resolution)
{
    const std::size_t n = ball.size();
    if (n == 0 || n > 3) throw DomainError("boundary_grid supports dimensions 1..3");
    if (!(resolution > 0.0) || resolution > 1e-2) throw DomainError("boundary_grid resolution must be in (0, 1e-2]");
    require_normalized(ball);

    std::vector<std::vector<double>> points;
    std::size_t patterns = 1;
    for (std::size_t i = 0; i < n; ++i) patterns *= 3;
    // Each coordinate is free, pinned at +1 or pinned at -1.
    for (std::size_t code = 0; code < patterns; ++code) {
        std::vector<int> pin(n);
        std::size_t c = code;
        std::size_t pinned = 0;
        for (std::size_t i = 0; i < n; ++i) {
            pin[i] = static_cast<int>(c % 3);
            c /= 3;
            pinned += pin[i] != 0;
        }
        const double rest = ball.p - static_cast<double>(pinned);
        if (rest < -1e-12) continue;
        std::vector<double> base(n, 0.0);
        DualBall sub{rest, {}};
        std::vector<std::size_t> free_idx;
        for (std::size_t i = 0; i < n; ++i) {
            if (pin[i] == 0) {
                free_idx.push_back(i);
                sub.tails.push_back(ball.tails[i]);
            } else {
                base[i] = pin[i] == 1 ? 1.0 : -1.0;
            }
        }
        if (free_idx.empty() || rest <= 1e-12) {
            points.push_back(base);
            continue;
        }
        for (const auto& dir : sphere_directions(free_idx.size(), resolution)) {
            const auto y = boundary_point(sub, dir);
            auto x = base;
            for (std::size_t f = 0; f < free_idx.size(); ++f) x[free_idx[f]] = y[f];
            points.push_back(std::move(x));
        }
    }
    return points;
}

double brute_norm_Xp(std::span<const double> a, const DualBall& ball, double resolution)
{
    if (a.size() != ball.size()) throw ConfigError("brute_norm_Xp: dimension mismatch");
    double best = 0.0;
    for (const auto& x : boundary_grid(ball, resolution)) best = std::max(best, dot(a, x));
    return best;
}

double brute_norm_XYp(const Matrix& a, const DualBall& ball_x, const DualBall& ball_y,
                      double resolution)
{
    if (a.rows() != ball_x.size() || a.cols() != ball_y.size()) {
        throw ConfigError("brute_norm_XYp: matrix shape does not match the balls");
    }
    if (a.rows() > 3 || a.cols() > 3) throw DomainError("brute_norm_XYp supports dimensions up to 3");
    if (a.is_zero()) return 0.0;
    const auto gx = boundary_grid(ball_x, resolution);
    const auto gy = boundary_grid(ball_y, resolution);
    const std::size_t n2 = a.cols();
    std::vector<double> flat_y;
    flat_y.reserve(gy.size() * n2);
    for (const auto& y : gy) flat_y.insert(flat_y.end(), y.begin(), y.end());
    std::vector<double> c(n2);
    double best = 0.0;
    for (const auto& x : gx) {
        a.apply_transpose(x, c);
        for (std::size_t s = 0; s < gy.size(); ++s) {
            best = std::max(best, dot(c, std::span<const double>(flat_y.data() + s * n2, n2)));
        }
    }
    return best;
}

}  // namespace lctchaos
