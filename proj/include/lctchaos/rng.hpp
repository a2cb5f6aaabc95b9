#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

namespace lctchaos {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; used to derive stream keys from (seed, counters).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Key for the stream addressed by `counters` under `master`. Pure function of
/// its arguments, so every stream can be rebuilt independently of the others.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> counters) noexcept
{
    std::uint64_t key = splitmix64(master);
    for (auto c : counters) {
        key = splitmix64(key ^ splitmix64(c + 0x632be59bd9b4e019ULL));
    }
    return key;
}

inline Rng make_stream(std::uint64_t master, std::initializer_list<std::uint64_t> counters)
{
    const std::uint64_t key = derive_seed(master, counters);
    std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32),
                      static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32)};
    return Rng(seq);
}

/// Uniform on the open interval (0, 1) with 53 random bits.
inline double uniform_open(Rng& rng) noexcept
{
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Fair sign, one bit of a fresh draw.
inline double random_sign(Rng& rng) noexcept { return (rng() >> 63) ? -1.0 : 1.0; }

/// Standard normal by Box–Muller (cosine branch only, so each call is independent).
inline double standard_normal(Rng& rng) noexcept
{
    const double u1 = uniform_open(rng);
    const double u2 = uniform_open(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace lctchaos
