#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "lossrisk/quantile.hpp"
#include "lossrisk/rng.hpp"

namespace testing_support {

// Deterministic generator shared by the property tests.
class Rand {
 public:
  explicit Rand(std::uint64_t seed) : gen_(lossrisk::splitmix64(seed)) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * lossrisk::uniform_open01(gen_); }
  std::size_t index(std::size_t lo, std::size_t hi) {  // inclusive
    return lo + static_cast<std::size_t>(lossrisk::uniform_open01(gen_) * static_cast<double>(hi - lo + 1));
  }

  std::vector<double> sample(std::size_t n, double lo = -10.0, double hi = 10.0) {
    std::vector<double> xs(n);
    for (double& x : xs) x = uniform(lo, hi);
    return xs;
  }

  lossrisk::QuantileFn empirical(std::size_t min_n = 1, std::size_t max_n = 12) {
    return lossrisk::QuantileFn::from_samples(sample(index(min_n, max_n)));
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace testing_support

#include <optional>

#include "lossrisk/error.hpp"

namespace testing_support {

// Error code thrown by f, or nullopt when it returns normally.
template <class F>
std::optional<lossrisk::ErrorCode> error_code(F&& f) {
  try {
    f();
  } catch (const lossrisk::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace testing_support
