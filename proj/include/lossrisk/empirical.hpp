#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lossrisk {

// Sorted P&L sample (gains positive, losses negative) with its step CDF.
// Ties are kept; the sample is never deduplicated.
class EmpiricalDistribution {
 public:
  // Throws InvalidInput on an empty sample or a non-finite value.
  explicit EmpiricalDistribution(std::span<const double> samples);
  explicit EmpiricalDistribution(std::vector<double> samples);

  std::size_t size() const noexcept { return samples_.size(); }
  const std::vector<double>& samples() const noexcept { return samples_; }

  // 1-based order statistic X_(k).
  double order_statistic(std::size_t k) const;

  double min() const noexcept { return samples_.front(); }
  double max() const noexcept { return samples_.back(); }

  // F(x) = #{i : x_i <= x} / n.
  double cdf(double x) const noexcept;
  // F(x-) = #{i : x_i < x} / n.
  double cdf_left(double x) const noexcept;

  friend bool operator==(const EmpiricalDistribution&,
                         const EmpiricalDistribution&) = default;

 private:
  std::vector<double> samples_;
};

EmpiricalDistribution build_empirical(std::span<const double> samples);

// X_(floor(n z) + 1), including at z = k/n. Throws DomainError unless 0 < z < 1.
double empirical_quantile(const EmpiricalDistribution& d, double z);

}  // namespace lossrisk
