#include "lctchaos/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lctchaos/errors.hpp"
#include "lctchaos/monte_carlo.hpp"
#include "lctchaos/parallel.hpp"

namespace lctchaos {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void collect_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& prefix,
                     std::vector<std::string>& unknown)
{
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) unknown.push_back(prefix + key);
    }
}

const json& require_object(const json& j, const std::string& what)
{
    if (!j.is_object()) throw ConfigError("config: '" + what + "' must be an object");
    return j;
}

double get_number(const json& j, const std::string& what)
{
    if (!j.is_number()) throw ConfigError("config: '" + what + "' must be a number");
    return j.get<double>();
}

long long get_integer(const json& j, const std::string& what)
{
    if (!j.is_number_integer()) throw ConfigError("config: '" + what + "' must be an integer");
    return j.get<long long>();
}

std::vector<double> get_grid(const json& j, const std::string& what)
{
    if (!j.is_array() || j.empty()) throw ConfigError("config: '" + what + "' must be a non-empty array");
    std::vector<double> out;
    for (const auto& v : j) out.push_back(get_number(v, what));
    return out;
}

std::size_t get_dim(const json& j, const std::string& what)
{
    const long long v = get_integer(j, what);
    if (v < 1) throw ConfigError("config: '" + what + "' must be >= 1");
    return static_cast<std::size_t>(v);
}

std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s)
{
    if (s == "nan") return kNaN;
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ConfigError("report: bad number '" + s + "'");
    return v;
}

void add_flag(std::string& flags, std::string_view flag)
{
    if (!flags.empty()) flags += ';';
    flags += flag;
}

std::string ensemble_label(const ExperimentConfig& cfg)
{
    std::string name(ensemble_name(cfg.ensemble));
    if (cfg.ensemble == Ensemble::Sparse) name += "(" + format_double(cfg.density) + ")";
    return name;
}

std::vector<double> unit_gaussian(std::size_t n, Rng& rng)
{
    std::vector<double> v(n);
    for (auto& e : v) e = standard_normal(rng);
    const double len = norm2(v);
    for (auto& e : v) e /= len;
    return v;
}

void set_ratios(ComparisonRow& row)
{
    if (!(row.mc_lhs > 0.0) || !std::isfinite(row.mc_lhs)) {
        add_flag(row.flags, "ratio_undefined");
        return;
    }
    row.ratio_lower = row.lower_total / row.mc_lhs;
    row.ratio_upper = row.mc_lhs / row.upper_total;
}

struct Task {
    std::size_t instance;
    double q;
    double r;
};

std::vector<ComparisonRow> run_task(const ExperimentConfig& cfg, const Task& task, RunMode mode)
{
    const std::uint64_t seed = instance_seed(cfg, task.instance);
    const TailDistribution dx = make_distribution(cfg.family_x, task.r);
    const TailDistribution dy = make_distribution(cfg.family_y, task.r);
    McConfig mc = cfg.mc;
    mc.master_seed = seed;
    mc.threads = 1;
    SolverConfig solver;
    solver.restarts = cfg.restarts;
    solver.seed = derive_seed(seed, {0x501});

    std::vector<ComparisonRow> rows;
    auto base_row = [&](double p) {
        ComparisonRow row;
        row.ensemble = ensemble_label(cfg);
        row.n1 = cfg.n1;
        row.n2 = cfg.n2;
        row.m = cfg.m;
        row.q = task.q;
        row.r = dx.r;
        row.p = p;
        row.seed = seed;
        return row;
    };

    if (mode == RunMode::Gk) {
        Rng rng = make_stream(seed, {3});
        std::vector<double> a(cfg.n1);
        for (auto& v : a) v = cfg.ensemble == Ensemble::Zero ? 0.0 : standard_normal(rng);
        const auto ests = gk_moments(a, dx, cfg.p_grid, mc);
        for (std::size_t ip = 0; ip < cfg.p_grid.size(); ++ip) {
            ComparisonRow row = base_row(cfg.p_grid[ip]);
            row.n2 = 1;
            row.m = 1;
            row.mc_lhs = ests[ip].value;
            row.mc_stderr = ests[ip].std_error;
            if (!ests[ip].reliable) add_flag(row.flags, "warn:unreliable_p");
            const NormResult nr = norm_Xp(a, DualBall::uniform(dx, a.size(), row.p), solver);
            row.lower_total = row.upper_total = nr.value;
            set_ratios(row);
            rows.push_back(std::move(row));
        }
        return rows;
    }

    const CoefficientTensor tensor = generate_ensemble(cfg, task.instance).with_q(task.q);
    std::vector<McEstimate> ests;
    if (mode != RunMode::Bound) ests = estimate_moments_decoupled(tensor, dx, dy, cfg.p_grid, mc);
    std::optional<double> gamma;
    if (mode != RunMode::Simulate && cfg.upper == BoundKind::UpperSubgaussian) gamma = subgaussian_gamma(dy);

    for (std::size_t ip = 0; ip < cfg.p_grid.size(); ++ip) {
        ComparisonRow row = base_row(cfg.p_grid[ip]);
        if (mode != RunMode::Bound) {
            row.mc_lhs = ests[ip].value;
            row.mc_stderr = ests[ip].std_error;
            if (!ests[ip].reliable) add_flag(row.flags, "warn:unreliable_p");
        }
        if (mode != RunMode::Simulate) {
            try {
                const BoundReport all = assemble_bound(tensor, BoundKind::UpperGeneral, row.p, dx, dy, solver);
                for (std::size_t t = 0; t < kTermNames.size(); ++t) row.terms[t] = all.terms.at(kTermNames[t]);
                if (!all.converged()) add_flag(row.flags, "nonconverged");
                row.lower_total = combine_terms(BoundKind::Lower, all.terms);
                const bool blocked = (cfg.upper == BoundKind::UpperSubgaussian && !gamma) ||
                                     (cfg.upper == BoundKind::Hilbert && task.q != 2.0);
                if (blocked) {
                    add_flag(row.flags, "precondition");
                } else {
                    row.upper_total = combine_terms(cfg.upper, all.terms, gamma);
                }
            } catch (const Error& e) {
                add_flag(row.flags, "solver_error");
            }
        }
        if (mode == RunMode::Verify) set_ratios(row);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string json_get_string(const json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_string()) throw ConfigError(std::string("report: missing string ") + key);
    return j[key].get<std::string>();
}

double json_get_double(const json& j, const char* key)
{
    if (!j.contains(key)) throw ConfigError(std::string("report: missing ") + key);
    if (j[key].is_null()) return kNaN;
    return j[key].get<double>();
}

}  // namespace

std::string_view ensemble_name(Ensemble e) noexcept
{
    switch (e) {
    case Ensemble::DenseGaussian: return "dense-gaussian";
    case Ensemble::Sparse: return "sparse";
    case Ensemble::Diagonal: return "diagonal";
    case Ensemble::Rank1: return "rank1";
    case Ensemble::Hilbert: return "hilbert";
    case Ensemble::Constant: return "constant";
    case Ensemble::Zero: return "zero";
    }
    return "unknown";
}

Ensemble parse_ensemble(std::string_view name)
{
    for (auto e : {Ensemble::DenseGaussian, Ensemble::Sparse, Ensemble::Diagonal, Ensemble::Rank1,
                   Ensemble::Hilbert, Ensemble::Constant, Ensemble::Zero}) {
        if (ensemble_name(e) == name) return e;
    }
    throw ConfigError("unknown ensemble '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const
{
    if (n1 < 1 || n2 < 1 || m < 1) throw ConfigError("config: dimensions must be >= 1");
    if (!(density > 0.0 && density <= 1.0)) throw ConfigError("config: density must lie in (0, 1]");
    if (q_grid.empty() || r_grid.empty() || p_grid.empty()) throw ConfigError("config: grids must be non-empty");
    for (double q : q_grid)
        if (!(q >= 1.0) || !std::isfinite(q)) throw ConfigError("config: q must be finite and >= 1");
    for (double r : r_grid)
        if (!(r >= 1.0) || !std::isfinite(r)) throw ConfigError("config: r must be finite and >= 1");
    for (double p : p_grid)
        if (!(p >= 1.0) || !std::isfinite(p)) throw ConfigError("config: p must be finite and >= 1");
    if (restarts < 0) throw ConfigError("config: restarts must be >= 0");
    if (instances < 1) throw ConfigError("config: instances must be >= 1");
    mc.validate();
}

ExperimentConfig parse_config(std::string_view text)
{
    ExperimentConfig cfg;
    std::string trimmed(text);
    if (trimmed.find_first_not_of(" \t\r\n") == std::string::npos) return cfg;
    json doc;
    try {
        doc = json::parse(trimmed);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: malformed JSON: ") + e.what());
    }
    require_object(doc, "document");

    std::vector<std::string> unknown;
    collect_unknown(doc,
                    {"ensemble", "density", "dims", "grids", "dist", "mc", "restarts", "instances", "upper",
                     "output"},
                    "", unknown);
    if (doc.contains("dims")) collect_unknown(require_object(doc["dims"], "dims"), {"n1", "n2", "m"}, "dims.", unknown);
    if (doc.contains("grids"))
        collect_unknown(require_object(doc["grids"], "grids"), {"q", "r", "p"}, "grids.", unknown);
    if (doc.contains("dist"))
        collect_unknown(require_object(doc["dist"], "dist"), {"family", "family_y", "r"}, "dist.", unknown);
    if (doc.contains("mc"))
        collect_unknown(require_object(doc["mc"], "mc"), {"samples", "batches", "seed", "unit_variance"}, "mc.",
                        unknown);
    if (doc.contains("output"))
        collect_unknown(require_object(doc["output"], "output"), {"csv", "json"}, "output.", unknown);
    if (!unknown.empty()) {
        std::string list;
        for (const auto& k : unknown) list += (list.empty() ? "" : ", ") + k;
        throw ConfigError("config: unknown keys: " + list);
    }

    if (doc.contains("ensemble")) {
        if (!doc["ensemble"].is_string()) throw ConfigError("config: 'ensemble' must be a string");
        cfg.ensemble = parse_ensemble(doc["ensemble"].get<std::string>());
    }
    if (doc.contains("density")) cfg.density = get_number(doc["density"], "density");
    if (doc.contains("dims")) {
        const auto& d = doc["dims"];
        if (d.contains("n1")) cfg.n1 = get_dim(d["n1"], "dims.n1");
        if (d.contains("n2")) cfg.n2 = get_dim(d["n2"], "dims.n2");
        if (d.contains("m")) cfg.m = get_dim(d["m"], "dims.m");
    }
    bool r_from_grid = false;
    if (doc.contains("grids")) {
        const auto& g = doc["grids"];
        if (g.contains("q")) cfg.q_grid = get_grid(g["q"], "grids.q");
        if (g.contains("r")) {
            cfg.r_grid = get_grid(g["r"], "grids.r");
            r_from_grid = true;
        }
        if (g.contains("p")) cfg.p_grid = get_grid(g["p"], "grids.p");
    }
    if (doc.contains("dist")) {
        const auto& d = doc["dist"];
        auto family = [&](const char* key) {
            if (!d[key].is_string()) throw ConfigError(std::string("config: 'dist.") + key + "' must be a string");
            return parse_family(d[key].get<std::string>());
        };
        if (d.contains("family")) cfg.family_x = cfg.family_y = family("family");
        if (d.contains("family_y")) cfg.family_y = family("family_y");
        if (d.contains("r")) {
            if (r_from_grid) throw ConfigError("config: give r either as dist.r or as grids.r, not both");
            cfg.r_grid = {get_number(d["r"], "dist.r")};
        }
    }
    if (doc.contains("mc")) {
        const auto& d = doc["mc"];
        if (d.contains("samples")) cfg.mc.total_samples = get_integer(d["samples"], "mc.samples");
        if (d.contains("batches")) cfg.mc.batches = static_cast<int>(get_integer(d["batches"], "mc.batches"));
        if (d.contains("seed")) {
            if (!d["seed"].is_number_integer() || (d["seed"].is_number_integer() && !d["seed"].is_number_unsigned()))
                throw ConfigError("config: 'mc.seed' must be a non-negative integer");
            cfg.mc.master_seed = d["seed"].get<std::uint64_t>();
        }
        if (d.contains("unit_variance")) {
            if (!d["unit_variance"].is_boolean()) throw ConfigError("config: 'mc.unit_variance' must be a boolean");
            cfg.mc.unit_variance = d["unit_variance"].get<bool>();
        }
    }
    if (doc.contains("restarts")) cfg.restarts = static_cast<int>(get_integer(doc["restarts"], "restarts"));
    if (doc.contains("instances")) cfg.instances = static_cast<int>(get_integer(doc["instances"], "instances"));
    if (doc.contains("upper")) {
        if (!doc["upper"].is_string()) throw ConfigError("config: 'upper' must be a string");
        cfg.upper = parse_kind(doc["upper"].get<std::string>());
        if (cfg.upper == BoundKind::Lower) throw ConfigError("config: 'upper' must name an upper bound kind");
    }
    if (doc.contains("output")) {
        const auto& o = doc["output"];
        for (const char* key : {"csv", "json"}) {
            if (o.contains(key) && !o[key].is_string())
                throw ConfigError(std::string("config: 'output.") + key + "' must be a string");
        }
        if (o.contains("csv")) cfg.csv_path = o["csv"].get<std::string>();
        if (o.contains("json")) cfg.json_path = o["json"].get<std::string>();
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::uint64_t instance_seed(const ExperimentConfig& cfg, std::size_t index) noexcept
{
    return derive_seed(cfg.mc.master_seed, {0x1a57, index});
}

CoefficientTensor generate_ensemble(const ExperimentConfig& cfg, std::size_t index)
{
    const std::size_t n1 = cfg.n1, n2 = cfg.n2, m = cfg.m;
    const double q = cfg.ensemble == Ensemble::Hilbert ? 2.0 : cfg.q_grid.front();
    const std::uint64_t seed = instance_seed(cfg, index);
    std::vector<double> data(n1 * n2 * m, 0.0);
    switch (cfg.ensemble) {
    case Ensemble::Zero: break;
    case Ensemble::Constant: std::fill(data.begin(), data.end(), 1.0); break;
    case Ensemble::Rank1: {
        Rng rng = make_stream(seed, {2});
        const auto u = unit_gaussian(n1, rng);
        const auto v = unit_gaussian(n2, rng);
        const auto w = unit_gaussian(m, rng);
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = 0; j < n2; ++j)
                for (std::size_t k = 0; k < m; ++k) data[(i * n2 + j) * m + k] = u[i] * v[j] * w[k];
        break;
    }
    default: {
        Rng values = make_stream(seed, {0});
        for (auto& v : data) v = standard_normal(values);
        if (cfg.ensemble == Ensemble::Sparse) {
            Rng mask = make_stream(seed, {1});
            for (auto& v : data)
                if (!(uniform_open(mask) < cfg.density)) v = 0.0;
        } else if (cfg.ensemble == Ensemble::Diagonal) {
            for (std::size_t i = 0; i < n1; ++i)
                for (std::size_t j = 0; j < n2; ++j)
                    if (i != j)
                        for (std::size_t k = 0; k < m; ++k) data[(i * n2 + j) * m + k] = 0.0;
        }
    }
    }
    return CoefficientTensor(n1, n2, m, q, std::move(data));
}

bool ComparisonRow::flagged() const
{
    std::stringstream ss(flags);
    std::string flag;
    while (std::getline(ss, flag, ';')) {
        if (!flag.empty() && flag.rfind("warn:", 0) != 0) return true;
    }
    return false;
}

bool ComparisonRow::operator==(const ComparisonRow& o) const
{
    // Bitwise on doubles so NaN fields compare equal to NaN.
    auto same = [](double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; };
    if (ensemble != o.ensemble || n1 != o.n1 || n2 != o.n2 || m != o.m || seed != o.seed || flags != o.flags)
        return false;
    const double mine[] = {q, r, p, mc_lhs, mc_stderr, lower_total, upper_total, ratio_lower, ratio_upper};
    const double theirs[] = {o.q, o.r, o.p, o.mc_lhs, o.mc_stderr, o.lower_total, o.upper_total, o.ratio_lower,
                             o.ratio_upper};
    for (std::size_t k = 0; k < std::size(mine); ++k)
        if (!same(mine[k], theirs[k])) return false;
    for (std::size_t k = 0; k < terms.size(); ++k)
        if (!same(terms[k], o.terms[k])) return false;
    return true;
}

std::vector<ComparisonRow> run_experiment(const ExperimentConfig& cfg, RunMode mode, int threads)
{
    cfg.validate();
    std::vector<double> qs = cfg.q_grid;
    if (cfg.ensemble == Ensemble::Hilbert || mode == RunMode::Gk) qs = {2.0};
    std::vector<Task> tasks;
    for (int i = 0; i < cfg.instances; ++i)
        for (double q : qs)
            for (double r : cfg.r_grid) tasks.push_back({static_cast<std::size_t>(i), q, r});

    std::vector<std::vector<ComparisonRow>> per_task(tasks.size());
    parallel_for(tasks.size(), threads, [&](std::size_t t) { per_task[t] = run_task(cfg, tasks[t], mode); });
    std::vector<ComparisonRow> rows;
    for (auto& chunk : per_task)
        for (auto& row : chunk) rows.push_back(std::move(row));
    return rows;
}

ReportFormat parse_format(std::string_view name)
{
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    throw ConfigError("unknown report format '" + std::string(name) + "'");
}

std::string format_report(const std::vector<ComparisonRow>& rows, ReportFormat format)
{
    if (format == ReportFormat::Json) {
        json out = json::array();
        for (const auto& row : rows) {
            json j = json::object();
            auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
            j["ensemble"] = row.ensemble;
            j["n1"] = row.n1;
            j["n2"] = row.n2;
            j["m"] = row.m;
            j["q"] = num(row.q);
            j["r"] = num(row.r);
            j["p"] = num(row.p);
            j["seed"] = row.seed;
            j["mc_lhs"] = num(row.mc_lhs);
            j["mc_stderr"] = num(row.mc_stderr);
            for (std::size_t t = 0; t < kTermNames.size(); ++t) j[kTermNames[t]] = num(row.terms[t]);
            j["lower_total"] = num(row.lower_total);
            j["upper_total"] = num(row.upper_total);
            j["ratio_lower"] = num(row.ratio_lower);
            j["ratio_upper"] = num(row.ratio_upper);
            j["flags"] = row.flags;
            out.push_back(std::move(j));
        }
        return out.dump(2) + "\n";
    }
    std::string text;
    for (std::size_t c = 0; c < kReportColumns.size(); ++c) text += (c ? "," : "") + kReportColumns[c];
    text += '\n';
    for (const auto& row : rows) {
        std::vector<std::string> cells = {row.ensemble,          std::to_string(row.n1), std::to_string(row.n2),
                                          std::to_string(row.m), format_double(row.q),   format_double(row.r),
                                          format_double(row.p),  std::to_string(row.seed), format_double(row.mc_lhs),
                                          format_double(row.mc_stderr)};
        for (double t : row.terms) cells.push_back(format_double(t));
        for (double v : {row.lower_total, row.upper_total, row.ratio_lower, row.ratio_upper})
            cells.push_back(format_double(v));
        cells.push_back(row.flags);
        for (std::size_t c = 0; c < cells.size(); ++c) text += (c ? "," : "") + cells[c];
        text += '\n';
    }
    return text;
}

std::vector<ComparisonRow> parse_report(std::string_view text, ReportFormat format)
{
    std::vector<ComparisonRow> rows;
    if (format == ReportFormat::Json) {
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("report: malformed JSON: ") + e.what());
        }
        if (!doc.is_array()) throw ConfigError("report: JSON report must be an array of rows");
        for (const auto& j : doc) {
            ComparisonRow row;
            row.ensemble = json_get_string(j, "ensemble");
            row.n1 = j.at("n1").get<std::size_t>();
            row.n2 = j.at("n2").get<std::size_t>();
            row.m = j.at("m").get<std::size_t>();
            row.q = json_get_double(j, "q");
            row.r = json_get_double(j, "r");
            row.p = json_get_double(j, "p");
            row.seed = j.at("seed").get<std::uint64_t>();
            row.mc_lhs = json_get_double(j, "mc_lhs");
            row.mc_stderr = json_get_double(j, "mc_stderr");
            for (std::size_t t = 0; t < kTermNames.size(); ++t)
                row.terms[t] = json_get_double(j, kTermNames[t].c_str());
            row.lower_total = json_get_double(j, "lower_total");
            row.upper_total = json_get_double(j, "upper_total");
            row.ratio_lower = json_get_double(j, "ratio_lower");
            row.ratio_upper = json_get_double(j, "ratio_upper");
            row.flags = json_get_string(j, "flags");
            rows.push_back(std::move(row));
        }
        return rows;
    }
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) return rows;
    std::string header;
    for (std::size_t c = 0; c < kReportColumns.size(); ++c) header += (c ? "," : "") + kReportColumns[c];
    if (line != header) throw ConfigError("report: CSV header does not match the report columns");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        for (;;) {
            const auto comma = line.find(',', start);
            cells.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (cells.size() != kReportColumns.size()) throw ConfigError("report: CSV row has the wrong column count");
        try {
            ComparisonRow row;
            row.ensemble = cells[0];
            row.n1 = std::stoull(cells[1]);
            row.n2 = std::stoull(cells[2]);
            row.m = std::stoull(cells[3]);
            row.q = parse_double(cells[4]);
            row.r = parse_double(cells[5]);
            row.p = parse_double(cells[6]);
            row.seed = std::stoull(cells[7]);
            row.mc_lhs = parse_double(cells[8]);
            row.mc_stderr = parse_double(cells[9]);
            for (std::size_t t = 0; t < 7; ++t) row.terms[t] = parse_double(cells[10 + t]);
            row.lower_total = parse_double(cells[17]);
            row.upper_total = parse_double(cells[18]);
            row.ratio_lower = parse_double(cells[19]);
            row.ratio_upper = parse_double(cells[20]);
            row.flags = cells[21];
            rows.push_back(std::move(row));
        } catch (const std::logic_error&) {
            throw ConfigError("report: unparsable CSV row: " + line);
        }
    }
    return rows;
}

void write_report(const std::vector<ComparisonRow>& rows, ReportFormat format, const std::string& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open report file for writing: " + path);
    out << format_report(rows, format);
    out.flush();
    if (!out) throw IoError("failed writing report file: " + path);
}

std::vector<ComparisonRow> read_report(const std::string& path, std::optional<ReportFormat> format)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read report file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (!format) {
        const auto first = text.find_first_not_of(" \t\r\n");
        format = (first != std::string::npos && text[first] == '[') ? ReportFormat::Json : ReportFormat::Csv;
    }
    return parse_report(text, *format);
}

}  // namespace lctchaos
