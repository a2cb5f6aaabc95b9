#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lctchaos/chaos_bounds.hpp"
#include "lctchaos/distribution.hpp"
#include "lctchaos/mc.hpp"
#include "lctchaos/tensor.hpp"

namespace lctchaos {

enum class Ensemble { DenseGaussian, Sparse, Diagonal, Rank1, Hilbert, Constant, Zero };

std::string_view ensemble_name(Ensemble e) noexcept;
Ensemble parse_ensemble(std::string_view name);

struct ExperimentConfig {
    Ensemble ensemble = Ensemble::DenseGaussian;
    double density = 1.0;  ///< keep probability for Sparse
    std::size_t n1 = 4, n2 = 4, m = 2;
    std::vector<double> q_grid{2.0};
    std::vector<double> r_grid{1.0};
    std::vector<double> p_grid{2.0, 4.0};
    Family family_x = Family::WeibullTail;
    Family family_y = Family::WeibullTail;
    McConfig mc{};
    int restarts = 16;
    int instances = 1;
    BoundKind upper = BoundKind::UpperGeneral;
    std::string csv_path;
    std::string json_path;

    /// Throws ConfigError naming the first violated precondition.
    void validate() const;
};

/// Parses the JSON experiment document; an empty document gives all defaults.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Seed that, with the shape fields, reproduces instance `index`.
std::uint64_t instance_seed(const ExperimentConfig& cfg, std::size_t index) noexcept;

/// Deterministic tensor for (cfg.mc.master_seed, index), with q = first q grid
/// value (2 for Hilbert).
CoefficientTensor generate_ensemble(const ExperimentConfig& cfg, std::size_t index);

struct ComparisonRow {
    std::string ensemble;
    std::size_t n1 = 0, n2 = 0, m = 0;
    double q = 2.0, r = 1.0, p = 1.0;
    std::uint64_t seed = 0;
    double mc_lhs = std::numeric_limits<double>::quiet_NaN();
    double mc_stderr = std::numeric_limits<double>::quiet_NaN();
    /// T1..T6 in column order; NaN where not computed.
    std::array<double, 7> terms{};
    double lower_total = std::numeric_limits<double>::quiet_NaN();
    double upper_total = std::numeric_limits<double>::quiet_NaN();
    double ratio_lower = std::numeric_limits<double>::quiet_NaN();
    double ratio_upper = std::numeric_limits<double>::quiet_NaN();
    /// ';'-separated. Entries starting with "warn:" are advisory.
    std::string flags;

    ComparisonRow() { terms.fill(std::numeric_limits<double>::quiet_NaN()); }
    /// True if any non-advisory flag is set.
    bool flagged() const;
    bool operator==(const ComparisonRow& other) const;
};

enum class RunMode { Verify, Bound, Simulate, Gk };

/// Rows ordered by (instance, q, r, p). `threads` only affects speed.
std::vector<ComparisonRow> run_experiment(const ExperimentConfig& cfg, RunMode mode = RunMode::Verify,
                                          int threads = 1);

enum class ReportFormat { Csv, Json };
ReportFormat parse_format(std::string_view name);

inline const std::vector<std::string> kReportColumns = {
    "ensemble", "n1", "n2", "m", "q", "r", "p", "seed", "mc_lhs", "mc_stderr", "T1",
    "T2", "T3", "T4r", "T4c", "T5", "T6", "lower_total", "upper_total", "ratio_lower", "ratio_upper", "flags"};

std::string format_report(const std::vector<ComparisonRow>& rows, ReportFormat format);
std::vector<ComparisonRow> parse_report(std::string_view text, ReportFormat format);

/// Throws IoError carrying the path on failure.
void write_report(const std::vector<ComparisonRow>& rows, ReportFormat format, const std::string& path);
std::vector<ComparisonRow> read_report(const std::string& path, std::optional<ReportFormat> format = {});

}  // namespace lctchaos
