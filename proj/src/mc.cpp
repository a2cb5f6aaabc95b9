#include "lctchaos/mc.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "lctchaos/errors.hpp"

namespace lctchaos {

int threads_from_env(int fallback)
{
    const char* env = std::getenv("THREADS");
    if (env == nullptr || *env == '\0') return fallback;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) return fallback;
    return static_cast<int>(v);
}

void McConfig::validate() const
{
    if (batches < 8) throw ConfigError("McConfig: batches must be >= 8");
    if (total_samples < batches) throw ConfigError("McConfig: total_samples must be >= batches");
    if (total_samples % batches != 0) {
        throw ConfigError("McConfig: total_samples (" + std::to_string(total_samples) +
                          ") must be divisible by batches (" + std::to_string(batches) + ")");
    }
    if (threads < 1) throw ConfigError("McConfig: threads must be >= 1");
}

McEstimate mean_estimate(const std::vector<std::vector<double>>& means, std::size_t index,
                         const McConfig& cfg)
{
    const auto b = static_cast<double>(means.size());
    double mean = 0.0;
    for (const auto& row : means) mean += row[index];
    mean /= b;
    double ss = 0.0;
    for (const auto& row : means) ss += (row[index] - mean) * (row[index] - mean);
    const double sd = std::sqrt(ss / (b - 1.0));
    return {mean, sd / std::sqrt(b), cfg.total_samples, cfg.master_seed, true};
}

McEstimate moment_estimate(const std::vector<std::vector<double>>& means, std::size_t index, double p,
                           const McConfig& cfg)
{
    McEstimate m = mean_estimate(means, index, cfg);
    if (m.value <= 0.0) return {0.0, 0.0, m.samples, m.seed, true};
    const double value = std::pow(m.value, 1.0 / p);
    m.std_error = value / (p * m.value) * m.std_error;
    m.value = value;
    m.reliable = p <= std::log(static_cast<double>(cfg.total_samples)) / 2.0;
    return m;
}

}  // namespace lctchaos
