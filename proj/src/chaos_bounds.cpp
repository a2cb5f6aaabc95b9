#include "lctchaos/chaos_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lctchaos/errors.hpp"
#include "lctchaos/process.hpp"

namespace lctchaos {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool improved_enough(double prev, double value, const SolverConfig& cfg)
{
    return value - prev > cfg.step_tolerance * std::max(std::fabs(value), 1e-300);
}

std::vector<double> unit_vector(std::size_t n, std::size_t k)
{
    std::vector<double> e(n, 0.0);
    e[k] = 1.0;
    return e;
}

std::vector<double> random_dual_point(std::size_t m, double q, Rng& rng)
{
    std::vector<double> g(m);
    for (auto& v : g) v = standard_normal(rng);
    return lq_dual_alignment(g, q);
}

/// Sign vectors with first entry +1 (the remaining half follow by symmetry).
std::vector<std::vector<double>> cube_vertices(std::size_t m)
{
    std::vector<std::vector<double>> out;
    const std::size_t count = std::size_t{1} << (m - 1);
    for (std::size_t code = 0; code < count; ++code) {
        std::vector<double> f(m, 1.0);
        for (std::size_t k = 1; k < m; ++k) f[k] = (code >> (k - 1)) & 1U ? -1.0 : 1.0;
        out.push_back(std::move(f));
    }
    return out;
}

constexpr std::size_t kMaxVertexScan = 12;

void keep_best(NormResult& best, bool& have_best, NormResult&& run)
{
    if (!have_best || run.value > best.value) {
        best = std::move(run);
        have_best = true;
    }
}

// (sum_k ||M_{.k}||_2^q)^{1/q} for M of shape n x m, with the column norms.
double mixed_norm(const Matrix& mat, double q, std::vector<double>& col_norms)
{
    col_norms.assign(mat.cols(), 0.0);
    for (std::size_t j = 0; j < mat.rows(); ++j)
        for (std::size_t k = 0; k < mat.cols(); ++k) col_norms[k] += mat(j, k) * mat(j, k);
    for (auto& v : col_norms) v = std::sqrt(v);
    return lq_norm(col_norms, q);
}

NormResult supx_mixed(const CoefficientTensor& a, const DualBall& ball_x, const SolverConfig& cfg)
{
    const std::size_t n1 = a.n1(), n2 = a.n2(), m = a.m();
    if (ball_x.size() != n1) throw ConfigError("sup over x: ball dimension must equal n1");
    NormResult best;
    best.maximizer.assign(n1, 0.0);
    best.auxiliary.assign(n2 * m, 0.0);
    if (a.is_zero()) return best;

    Rng rng = make_stream(cfg.seed, {0x72, n1, n2, m});
    std::vector<std::vector<double>> starts;
    for (std::size_t i = 0; i < n1; ++i) starts.push_back(boundary_point(ball_x, unit_vector(n1, i)));
    for (int s = 0; s < cfg.restarts; ++s) starts.push_back(random_boundary_point(ball_x, rng));

    std::vector<double> nu;
    bool have_best = false;
    for (auto& x0 : starts) {
        NormResult run;
        run.maximizer = std::move(x0);
        Matrix mat = a.contract_i(run.maximizer);
        double value = mixed_norm(mat, a.q(), nu);
        run.trace.push_back(value);
        run.converged = false;
        Matrix w(n2, m);
        for (int it = 0; it < cfg.max_iterations; ++it) {
            const auto beta = lq_dual_alignment(nu, a.q());
            for (std::size_t j = 0; j < n2; ++j)
                for (std::size_t k = 0; k < m; ++k) w(j, k) = nu[k] > 0.0 ? beta[k] * mat(j, k) / nu[k] : 0.0;
            std::vector<double> c(n1, 0.0);
            for (std::size_t i = 0; i < n1; ++i)
                for (std::size_t j = 0; j < n2; ++j)
                    for (std::size_t k = 0; k < m; ++k) c[i] += a(i, j, k) * w(j, k);
            auto x = norm_Xp(c, ball_x, cfg).maximizer;
            Matrix next = a.contract_i(x);
            const double v = mixed_norm(next, a.q(), nu);
            run.trace.push_back(v);
            const bool moved = improved_enough(value, v, cfg);
            if (v >= value) {
                value = v;
                run.maximizer = std::move(x);
                mat = std::move(next);
            }
            if (!moved) {
                run.converged = true;
                break;
            }
        }
        run.value = value;
        run.auxiliary = w.data();
        keep_best(best, have_best, std::move(run));
    }
    best.restarts_used = static_cast<int>(starts.size());
    return best;
}

struct RowObjective {
    double value = 0.0;
    std::vector<double> x;
    std::vector<double> row_norms;
};

RowObjective row_objective(const std::vector<Matrix>& slices, std::span<const double> f, const DualBall& ball,
                           const SolverConfig& cfg)
{
    RowObjective out;
    std::vector<double> img;
    out.row_norms.resize(slices.size());
    for (std::size_t i = 0; i < slices.size(); ++i) {
        img.assign(slices[i].rows(), 0.0);
        slices[i].apply(f, img);
        out.row_norms[i] = norm2(img);
    }
    NormResult nr = norm_Xp(out.row_norms, ball, cfg);
    out.value = nr.value;
    out.x = std::move(nr.maximizer);
    return out;
}

NormResult sup_f_rows(const CoefficientTensor& a, const DualBall& ball, const SolverConfig& cfg)
{
    const std::size_t n1 = a.n1(), m = a.m();
    if (ball.size() != n1) throw ConfigError("sup over f: ball dimension does not match the summed side");
    NormResult best;
    best.maximizer.assign(n1, 0.0);
    best.auxiliary.assign(m, 0.0);
    if (a.is_zero()) return best;

    std::vector<Matrix> slices;
    for (std::size_t i = 0; i < n1; ++i) slices.push_back(a.slice_i(i));

    bool have_best = false;
    const bool exhaustive = a.q() == 1.0 && m <= kMaxVertexScan;
    std::vector<std::vector<double>> starts;
    if (exhaustive) {
        // The objective is convex in f, so its sup over the cube is a vertex.
        for (auto& f : cube_vertices(m)) {
            RowObjective obj = row_objective(slices, f, ball, cfg);
            NormResult run;
            run.value = obj.value;
            run.maximizer = std::move(obj.x);
            run.auxiliary = std::move(f);
            run.trace = {run.value};
            keep_best(best, have_best, std::move(run));
        }
        best.restarts_used = static_cast<int>(std::size_t{1} << (m - 1));
        return best;
    }

    Rng rng = make_stream(cfg.seed, {0x74, a.n1(), a.n2(), m});
    for (std::size_t k = 0; k < m; ++k) starts.push_back(unit_vector(m, k));
    for (int s = 0; s < cfg.restarts; ++s) starts.push_back(random_dual_point(m, a.q(), rng));

    std::vector<double> img, c(m);
    for (auto& f0 : starts) {
        NormResult run;
        run.auxiliary = std::move(f0);
        RowObjective obj = row_objective(slices, run.auxiliary, ball, cfg);
        run.trace.push_back(obj.value);
        run.converged = false;
        for (int it = 0; it < cfg.max_iterations; ++it) {
            std::fill(c.begin(), c.end(), 0.0);
            for (std::size_t i = 0; i < n1; ++i) {
                if (obj.row_norms[i] == 0.0 || obj.x[i] == 0.0) continue;
                img.assign(slices[i].rows(), 0.0);
                slices[i].apply(run.auxiliary, img);
                const double w = obj.x[i] / obj.row_norms[i];
                for (std::size_t j = 0; j < img.size(); ++j)
                    for (std::size_t k = 0; k < m; ++k) c[k] += w * img[j] * slices[i](j, k);
            }
            auto f = lq_dual_alignment(c, a.q());
            RowObjective next = row_objective(slices, f, ball, cfg);
            run.trace.push_back(next.value);
            const bool moved = improved_enough(obj.value, next.value, cfg);
            if (next.value >= obj.value) {
                obj = std::move(next);
                run.auxiliary = std::move(f);
            }
            if (!moved) {
                run.converged = true;
                break;
            }
        }
        run.value = obj.value;
        run.maximizer = std::move(obj.x);
        keep_best(best, have_best, std::move(run));
    }
    best.restarts_used = static_cast<int>(m) + cfg.restarts;
    return best;
}

// Alternating (x, y, f) ascent from a starting f and y.
NormResult ascend_xyf(const CoefficientTensor& a, const DualBall& ball_x, const DualBall& ball_y,
                      std::vector<double> f, std::vector<double> y, const SolverConfig& cfg)
{
    const std::size_t n1 = a.n1(), n2 = a.n2(), m = a.m();
    NormResult run;
    run.converged = false;
    run.value = -kInf;
    std::vector<double> x(n1), cx(n1), cy(n2), c(m);
    for (int it = 0; it < cfg.max_iterations; ++it) {
        const Matrix fm = a.contract_k(f);
        fm.apply(y, cx);
        x = norm_Xp(cx, ball_x, cfg).maximizer;
        fm.apply_transpose(x, cy);
        y = norm_Xp(cy, ball_y, cfg).maximizer;
        std::fill(c.begin(), c.end(), 0.0);
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = 0; j < n2; ++j) {
                const double w = x[i] * y[j];
                if (w == 0.0) continue;
                for (std::size_t k = 0; k < m; ++k) c[k] += a(i, j, k) * w;
            }
        const double v = lq_norm(c, a.q());
        run.trace.push_back(v);
        const bool moved = it == 0 || improved_enough(run.value, v, cfg);
        if (v >= run.value) {
            run.value = v;
            f = lq_dual_alignment(c, a.q());
            run.maximizer = x;
            run.maximizer.insert(run.maximizer.end(), y.begin(), y.end());
            run.auxiliary = f;
        }
        if (!moved) {
            run.converged = true;
            break;
        }
    }
    return run;
}

}  // namespace

std::string_view kind_name(BoundKind kind) noexcept
{
    switch (kind) {
    case BoundKind::Lower: return "lower";
    case BoundKind::UpperSubgaussian: return "subgaussian";
    case BoundKind::UpperGeneral: return "general";
    case BoundKind::TwoSidedExpPower: return "exp_power";
    case BoundKind::Hilbert: return "hilbert";
    }
    return "unknown";
}

BoundKind parse_kind(std::string_view name)
{
    for (auto kind : {BoundKind::Lower, BoundKind::UpperSubgaussian, BoundKind::UpperGeneral,
                      BoundKind::TwoSidedExpPower, BoundKind::Hilbert}) {
        if (kind_name(kind) == name) return kind;
    }
    throw ConfigError("unknown bound kind '" + std::string(name) + "'");
}

std::vector<std::string> terms_of(BoundKind kind)
{
    switch (kind) {
    case BoundKind::Lower: return {"T1", "T2", "T3", "T4r", "T4c", "T5"};
    case BoundKind::UpperGeneral: return {"T1", "T2", "T3", "T4r", "T4c", "T5", "T6"};
    case BoundKind::UpperSubgaussian:
    case BoundKind::TwoSidedExpPower:
    case BoundKind::Hilbert: return {"T1", "T2", "T3", "T4r", "T5"};
    }
    return {};
}

bool BoundReport::converged() const noexcept
{
    return std::all_of(diagnostics.begin(), diagnostics.end(), [](const auto& kv) { return kv.second.converged; });
}

double term_T1_chaos_mean(const CoefficientTensor& a) { return s_A_surrogate(a); }

NormResult term_T2_supx(const CoefficientTensor& a, const DualBall& ball_x, const SolverConfig& cfg)
{
    return supx_mixed(a, ball_x, cfg);
}

NormResult term_T3_supy(const CoefficientTensor& a, const DualBall& ball_y, const SolverConfig& cfg)
{
    return supx_mixed(a.swapped_ij(), ball_y, cfg);
}

NormResult term_T4_sup_f_column(const CoefficientTensor& a, const DualBall& ball, Side side,
                                const SolverConfig& cfg)
{
    return side == Side::Rows ? sup_f_rows(a, ball, cfg) : sup_f_rows(a.swapped_ij(), ball, cfg);
}

NormResult term_T5_sup_f_xyp(const CoefficientTensor& a, const DualBall& ball_x, const DualBall& ball_y,
                             const SolverConfig& cfg)
{
    const std::size_t n1 = a.n1(), n2 = a.n2(), m = a.m();
    if (ball_x.size() != n1 || ball_y.size() != n2) throw ConfigError("term_T5: ball dimensions must be n1 and n2");
    NormResult best;
    best.maximizer.assign(n1 + n2, 0.0);
    best.auxiliary.assign(m, 0.0);
    if (a.is_zero()) return best;

    bool have_best = false;
    int runs = 0;
    std::vector<std::vector<double>> starts;
    if (a.q() == 1.0 && m <= kMaxVertexScan) {
        // Convex in f: screen every cube vertex, then polish from the best one.
        SolverConfig screen = cfg;
        screen.restarts = std::min(cfg.restarts, 4);
        std::vector<double> best_f;
        double best_v = -kInf;
        for (auto& f : cube_vertices(m)) {
            const double v = norm_XYp(a.contract_k(f), ball_x, ball_y, screen).value;
            ++runs;
            if (v > best_v) {
                best_v = v;
                best_f = f;
            }
        }
        starts.push_back(std::move(best_f));
    }
    Rng rng = make_stream(cfg.seed, {0x75, n1, n2, m});
    for (std::size_t k = 0; k < m; ++k) starts.push_back(unit_vector(m, k));
    for (int s = 0; s < cfg.restarts; ++s) starts.push_back(random_dual_point(m, a.q(), rng));

    for (auto& f0 : starts) {
        const Matrix fm = a.contract_k(f0);
        std::vector<double> y0 = fm.is_zero() ? random_boundary_point(ball_y, rng)
                                              : boundary_point(ball_y, dominant_right_singular_vector(fm));
        keep_best(best, have_best, ascend_xyf(a, ball_x, ball_y, std::move(f0), std::move(y0), cfg));
        ++runs;
    }
    best.restarts_used = runs;
    return best;
}

NormResult slice_operator_norm(const Matrix& slice, double q, const SolverConfig& cfg)
{
    const std::size_t n = slice.rows(), m = slice.cols();
    NormResult best;
    best.maximizer.assign(m, 0.0);
    if (slice.is_zero()) return best;
    std::vector<double> img(n), back(m);
    auto value_at = [&](std::span<const double> t) {
        slice.apply(t, img);
        return norm2(img);
    };
    bool have_best = false;
    if (q == 1.0 && m <= 16) {
        for (auto& t : cube_vertices(m)) {
            NormResult run;
            run.value = value_at(t);
            run.maximizer = std::move(t);
            keep_best(best, have_best, std::move(run));
        }
        best.restarts_used = static_cast<int>(std::size_t{1} << (m - 1));
        return best;
    }

    Rng rng = make_stream(cfg.seed, {0x76, n, m});
    std::vector<std::vector<double>> starts;
    for (std::size_t k = 0; k < m; ++k) starts.push_back(unit_vector(m, k));
    for (int s = 0; s < cfg.restarts; ++s) starts.push_back(random_dual_point(m, q, rng));
    constexpr int kPowerIterations = 100000;
    for (auto& t0 : starts) {
        NormResult run;
        run.maximizer = std::move(t0);
        run.value = value_at(run.maximizer);
        run.converged = false;
        for (int it = 0; it < kPowerIterations; ++it) {
            slice.apply(run.maximizer, img);
            const double len = norm2(img);
            if (len == 0.0) break;
            for (auto& e : img) e /= len;
            slice.apply_transpose(img, back);
            auto t = lq_dual_alignment(back, q);
            const double v = value_at(t);
            if (!(v > run.value * (1.0 + 1e-15))) {
                if (v > run.value) {
                    run.value = v;
                    run.maximizer = std::move(t);
                }
                run.converged = true;
                break;
            }
            run.value = v;
            run.maximizer = std::move(t);
        }
        keep_best(best, have_best, std::move(run));
    }
    best.restarts_used = static_cast<int>(starts.size());
    return best;
}

double term_T6_operator(const CoefficientTensor& a, double p, const SolverConfig& cfg)
{
    double best = 0.0;
    for (std::size_t i = 0; i < a.n1(); ++i) best = std::max(best, slice_operator_norm(a.slice_i(i), a.q(), cfg).value);
    return p * best;
}

double log_mgf(const TailDistribution& d, double t)
{
    if (t < 0.0) t = -t;
    if (t == 0.0) return 0.0;
    if (has_linear_tail(d) && t >= 1.0) return kInf;
    // E e^{tX} = 1 + int_0^inf t sinh(t u) P(|X| >= u) du; the log-integrand is concave.
    auto log_integrand = [&](double u) {
        if (u <= 0.0) return -kInf;
        const double tu = t * u;
        const double log_sinh = tu + std::log1p(-std::exp(-2.0 * tu)) - std::log(2.0);
        return std::log(t) + log_sinh - tail_N(d, u);
    };
    double upper = 1.0;
    double peak = log_integrand(upper);
    for (int guard = 0; guard < 200; ++guard) {
        const double next = log_integrand(2.0 * upper);
        upper *= 2.0;
        if (next > peak) {
            peak = next;
            continue;
        }
        if (next < peak - 80.0) break;
    }
    // Refine the peak on a grid so the scaled integrand stays O(1).
    for (int i = 1; i <= 2000; ++i) peak = std::max(peak, log_integrand(upper * i / 2000.0));
    auto scaled = [&](double u) { return u <= 0.0 ? 0.0 : std::exp(log_integrand(u) - peak); };
    double err = 0.0;
    double integral = 0.0;
    constexpr int pieces = 16;
    for (int s = 0; s < pieces; ++s) {
        integral += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            scaled, upper * s / pieces, upper * (s + 1) / pieces, 12, 1e-13, &err);
    }
    if (!(integral > 0.0)) return 0.0;
    const double log_part = peak + std::log(integral);
    return log_part > 0.0 ? log_part + std::log1p(std::exp(-log_part)) : std::log1p(std::exp(log_part));
}

std::optional<double> subgaussian_gamma(const TailDistribution& d, int grid_points)
{
    if (d.r < 2.0) return std::nullopt;
    if (grid_points < 2) throw ConfigError("subgaussian_gamma: grid needs at least two points");
    double gamma = raw_moment(d, 2) / 2.0;
    constexpr double t_lo = 1e-2, t_hi = 30.0;
    double mid_ratio = 0.0, last_ratio = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        const double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (grid_points - 1));
        const double ratio = log_mgf(d, t) / (t * t);
        if (!std::isfinite(ratio)) return std::nullopt;
        gamma = std::max(gamma, ratio);
        if (i == grid_points / 2) mid_ratio = ratio;
        last_ratio = ratio;
    }
    if (last_ratio > 2.0 * mid_ratio && last_ratio > gamma * 0.99) return std::nullopt;
    return gamma;
}

double combine_terms(BoundKind kind, const std::map<std::string, double>& terms, std::optional<double> gamma)
{
    double total = 0.0;
    for (const auto& name : terms_of(kind)) {
        const auto it = terms.find(name);
        if (it == terms.end()) throw ConfigError("combine_terms: missing term " + name);
        total += (name == "T1" && gamma) ? *gamma * it->second : it->second;
    }
    return total;
}

BoundReport assemble_bound(const CoefficientTensor& a, BoundKind kind, double p, const TailDistribution& dist_x,
                           const TailDistribution& dist_y, const SolverConfig& cfg)
{
    if (!(p >= 1.0)) throw ConfigError("assemble_bound: p must be >= 1");
    BoundReport report;
    report.kind = kind;
    report.p = p;
    report.q = a.q();
    report.r = dist_x.r;
    report.n1 = a.n1();
    report.n2 = a.n2();
    report.m = a.m();

    if (kind == BoundKind::Hilbert && a.q() != 2.0) {
        throw ConfigError("Hilbert bound requires q = 2, got q = " + std::to_string(a.q()));
    }
    if (kind == BoundKind::UpperSubgaussian) {
        report.gamma = subgaussian_gamma(dist_y);
        if (!report.gamma) {
            throw ConfigError("subgaussian bound requires a subgaussian Y law (r >= 2), got r = " +
                              std::to_string(dist_y.r));
        }
    }

    const DualBall ball_x = DualBall::uniform(dist_x, a.n1(), p);
    const DualBall ball_y = DualBall::uniform(dist_y, a.n2(), p);
    auto record = [&](const std::string& name, const NormResult& res) {
        report.terms[name] = res.value;
        report.diagnostics[name] = {res.converged, res.restarts_used};
    };
    for (const auto& name : terms_of(kind)) {
        if (name == "T1") {
            report.terms[name] = term_T1_chaos_mean(a);
            report.diagnostics[name] = {true, 0};
        } else if (name == "T2") {
            record(name, term_T2_supx(a, ball_x, cfg));
        } else if (name == "T3") {
            record(name, term_T3_supy(a, ball_y, cfg));
        } else if (name == "T4r") {
            record(name, term_T4_sup_f_column(a, ball_x, Side::Rows, cfg));
        } else if (name == "T4c") {
            record(name, term_T4_sup_f_column(a, ball_y, Side::Columns, cfg));
        } else if (name == "T5") {
            record(name, term_T5_sup_f_xyp(a, ball_x, ball_y, cfg));
        } else if (name == "T6") {
            report.terms[name] = term_T6_operator(a, p, cfg);
            report.diagnostics[name] = {true, 0};
        }
    }
    report.total = combine_terms(kind, report.terms, report.gamma);
    return report;
}

}  // namespace lctchaos
