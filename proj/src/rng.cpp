#include "lossrisk/rng.hpp"

namespace lossrisk {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t replication_seed(std::uint64_t seed, std::uint64_t r) noexcept {
  return splitmix64(seed ^ (r * 0x9E3779B97F4A7C15ULL));
}

double uniform_open01(std::mt19937_64& gen) noexcept {
  return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace lossrisk
