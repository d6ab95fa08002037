#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace lossrisk {

// Name recorded in every report that involves randomness.
inline constexpr std::string_view kRngName =
    "mt19937_64; replication seed = splitmix64(seed ^ (r * 0x9E3779B97F4A7C15)); "
    "uniform = ((x >> 11) + 0.5) * 2^-53";

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Seed of replication r, derived from the experiment seed.
std::uint64_t replication_seed(std::uint64_t seed, std::uint64_t r) noexcept;

// Uniform draw in the open interval (0,1), independent of the standard
// library's distribution implementations.
double uniform_open01(std::mt19937_64& gen) noexcept;

}  // namespace lossrisk
