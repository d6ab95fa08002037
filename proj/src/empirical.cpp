#include "lossrisk/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lossrisk/error.hpp"

namespace lossrisk {

EmpiricalDistribution::EmpiricalDistribution(std::span<const double> samples)
    : EmpiricalDistribution(std::vector<double>(samples.begin(), samples.end())) {}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples)
    : samples_(std::move(samples)) {
  if (samples_.empty()) fail(ErrorCode::InvalidInput, "empty sample");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i])) {
      fail(ErrorCode::InvalidInput,
           "non-finite sample at index " + std::to_string(i));
    }
  }
  std::stable_sort(samples_.begin(), samples_.end());
}

double EmpiricalDistribution::order_statistic(std::size_t k) const {
  if (k < 1 || k > samples_.size()) {
    fail(ErrorCode::DomainError,
         "order statistic index " + std::to_string(k) + " out of range");
  }
  return samples_[k - 1];
}

double EmpiricalDistribution::cdf(double x) const noexcept {
  auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) /
         static_cast<double>(samples_.size());
}

double EmpiricalDistribution::cdf_left(double x) const noexcept {
  auto it = std::lower_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) /
         static_cast<double>(samples_.size());
}

EmpiricalDistribution build_empirical(std::span<const double> samples) {
  return EmpiricalDistribution(samples);
}

double empirical_quantile(const EmpiricalDistribution& d, double z) {
  if (!(z > 0.0 && z < 1.0)) {
    fail(ErrorCode::DomainError,
         "quantile level must lie in (0,1), got " + std::to_string(z));
  }
  const std::size_t n = d.size();
  auto idx = static_cast<std::size_t>(std::floor(static_cast<double>(n) * z));
  // n*z can round up to n for z just below 1.
  idx = std::min(idx, n - 1);
  return d.samples()[idx];
}

}  // namespace lossrisk
