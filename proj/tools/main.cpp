// Batch runner: bound, simulate, verify (default), gk, report.
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lctchaos/errors.hpp"
#include "lctchaos/harness.hpp"

namespace {

enum Exit { kOk = 0, kFlagged = 1, kConfig = 2, kIo = 3 };

int emit(const std::vector<lctchaos::ComparisonRow>& rows, const lctchaos::ExperimentConfig* cfg,
         const std::string& format, const std::string& out)
{
    const auto fmt = lctchaos::parse_format(format);
    if (!out.empty()) {
        lctchaos::write_report(rows, fmt, out);
    } else if (cfg && (!cfg->csv_path.empty() || !cfg->json_path.empty())) {
        if (!cfg->csv_path.empty()) lctchaos::write_report(rows, lctchaos::ReportFormat::Csv, cfg->csv_path);
        if (!cfg->json_path.empty()) lctchaos::write_report(rows, lctchaos::ReportFormat::Json, cfg->json_path);
    } else {
        std::cout << lctchaos::format_report(rows, fmt);
    }
    int flagged = 0;
    for (const auto& row : rows) flagged += row.flagged() ? 1 : 0;
    if (flagged) std::cerr << flagged << " of " << rows.size() << " rows flagged\n";
    return flagged ? kFlagged : kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Moment bounds for decoupled chaoses with log-concave tails"};
    app.require_subcommand(0, 1);

    std::string config_path, format = "csv", out, in_path;
    std::optional<std::uint64_t> seed;
    int threads = lctchaos::threads_from_env(1);

    auto add_common = [&](CLI::App* sub, bool with_config) {
        if (with_config) {
            sub->add_option("--config", config_path, "experiment JSON file");
            sub->add_option("--seed", seed, "master seed, overrides mc.seed");
            sub->add_option("--threads", threads, "worker threads (env THREADS)");
        }
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", out, "write the report here instead of stdout");
    };
    auto* bound = app.add_subcommand("bound", "deterministic terms only");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo moments only");
    auto* verify = app.add_subcommand("verify", "bounds against Monte Carlo (default)");
    auto* gk = app.add_subcommand("gk", "one-dimensional moment vs dual norm check");
    auto* report = app.add_subcommand("report", "re-serialize stored rows");
    for (auto* sub : {bound, simulate, verify, gk}) add_common(sub, true);
    add_common(&app, true);
    add_common(report, false);
    report->add_option("--in", in_path, "stored CSV or JSON report")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (report->parsed()) return emit(lctchaos::read_report(in_path), nullptr, format, out);

        lctchaos::ExperimentConfig cfg =
            config_path.empty() ? lctchaos::ExperimentConfig{} : lctchaos::load_config(config_path);
        if (seed) cfg.mc.master_seed = *seed;
        if (threads < 1) throw lctchaos::ConfigError("--threads must be >= 1");
        lctchaos::RunMode mode = lctchaos::RunMode::Verify;
        if (bound->parsed()) mode = lctchaos::RunMode::Bound;
        if (simulate->parsed()) mode = lctchaos::RunMode::Simulate;
        if (gk->parsed()) mode = lctchaos::RunMode::Gk;
        const auto rows = lctchaos::run_experiment(cfg, mode, threads);
        return emit(rows, &cfg, format, out);
    } catch (const lctchaos::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const lctchaos::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfig;
    }
}
