#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace lpvdd {

/**
 * Seedable, portable random source.
 *
 * Engine std::mt19937_64. Stream k of seed s is seeded with
 * splitmix64(s) ^ splitmix64(k + 1); uniform doubles take the top 53 bits of
 * each draw.
 */
class Rng {
public:
    static constexpr std::string_view kName = "mt19937_64+splitmix64-streams";

    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    /// Independent generator for sub-task `stream` of the same seed.
    [[nodiscard]] Rng split(std::uint64_t stream) const { return Rng(seed_, stream); }

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1).
    double unit();

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace lpvdd
