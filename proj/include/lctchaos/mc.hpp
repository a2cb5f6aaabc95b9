#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lctchaos/parallel.hpp"
#include "lctchaos/rng.hpp"

namespace lctchaos {

struct McConfig {
    std::int64_t total_samples = 200'000;
    int batches = 32;
    std::uint64_t master_seed = 1;
    bool unit_variance = false;  ///< rescale every draw to variance one
    int threads = 1;             ///< execution only; never changes results

    void validate() const;
    std::int64_t samples_per_batch() const noexcept { return total_samples / batches; }
};

/// Monte Carlo point estimate with its batch-means standard error.
struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    /// false when the moment order exceeds the ln(N)/2 reliability guidance
    bool reliable = true;
};

/// Per-batch means of `stats` statistics. Batch b draws from the stream
/// (master_seed, b), so the table is identical for any thread count.
///
/// `make_worker()` is called once per batch and returns a callable
/// `void(Rng&, std::span<double> sums)` that adds one sample's statistics.
template <class MakeWorker>
std::vector<std::vector<double>> batch_means(const McConfig& cfg, std::size_t stats,
                                             MakeWorker&& make_worker)
{
    cfg.validate();
    const auto batches = static_cast<std::size_t>(cfg.batches);
    const std::int64_t per_batch = cfg.samples_per_batch();
    std::vector<std::vector<double>> means(batches, std::vector<double>(stats, 0.0));
    parallel_for(batches, cfg.threads, [&](std::size_t b) {
        Rng rng = make_stream(cfg.master_seed, {0xba7c4ULL, b});
        auto worker = make_worker();
        std::vector<double> sums(stats, 0.0);
        for (std::int64_t s = 0; s < per_batch; ++s) worker(rng, std::span<double>(sums));
        for (std::size_t k = 0; k < stats; ++k) means[b][k] = sums[k] / static_cast<double>(per_batch);
    });
    return means;
}

/// Mean of statistic `index` across batches, stderr = sd(batch means)/sqrt(B).
McEstimate mean_estimate(const std::vector<std::vector<double>>& means, std::size_t index,
                         const McConfig& cfg);

/// (E|Z|^p)^{1/p} from batch means of |Z|^p with a delta-method stderr.
McEstimate moment_estimate(const std::vector<std::vector<double>>& means, std::size_t index, double p,
                           const McConfig& cfg);

}  // namespace lctchaos
