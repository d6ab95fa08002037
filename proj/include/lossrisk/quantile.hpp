#pragma once

#include <memory>
#include <span>
#include <vector>

#include "lossrisk/empirical.hpp"

namespace lossrisk {

// One linear stretch of a quantile function: on the open interval (t0, t1)
// the function runs linearly from v0 (right limit at t0) to v1 (left limit at
// t1). Constant stretches have v0 == v1.
struct Piece {
  double t0;
  double t1;
  double v0;
  double v1;

  double length() const noexcept { return t1 - t0; }
  bool constant() const noexcept { return v0 == v1; }
  // Linear interpolation inside the piece; does not apply any endpoint
  // convention of the owning quantile function.
  double at(double t) const noexcept;
};

enum class Interpolation {
  StepLeftContinuous,
  Linear,
};

// Dirac contamination (1 - epsilon) F + epsilon * delta_z.
struct ContaminationSpec {
  double z;
  double epsilon;
};

// Evaluable, nondecreasing quantile function on (0,1).
//
// Every kind exposes an exact piecewise-linear decomposition over (0,1),
// which is what the risk-measure evaluators integrate against. Point
// evaluation follows each kind's own convention (for empirical quantiles,
// X_(floor(nz)+1)). Values are immutable and cheap to copy.
class QuantileFn {
 public:
  enum class Kind {
    Empirical,
    Tabulated,
    FloorTruncated,
    Contaminated,
    Combination,
  };

  static QuantileFn from_empirical(EmpiricalDistribution d);
  static QuantileFn from_samples(std::span<const double> samples);

  // Nodes (levels[i], values[i]) with levels nondecreasing in [0,1] and values
  // nondecreasing. A repeated level encodes a jump. StepLeftContinuous takes
  // values[i] on (levels[i-1], levels[i]]; Linear interpolates between nodes.
  // Both extend constantly beyond the first and last node.
  static QuantileFn tabulated(std::vector<double> levels,
                              std::vector<double> values,
                              Interpolation rule = Interpolation::StepLeftContinuous);

  static QuantileFn constant(double value);

  // Pointwise sum_i weights[i] * parts[i](t) + shift, optionally capped as
  // min(., 0). Weights must be nonnegative so the result stays monotone.
  static QuantileFn combination(std::vector<QuantileFn> parts,
                                std::vector<double> weights, double shift,
                                bool cap_at_zero);

  // G(. v delta). Throws DomainError unless 0 < delta < 1.
  QuantileFn floor_truncated(double delta) const;
  QuantileFn contaminated(const ContaminationSpec& c) const;

  QuantileFn loss_part() const;           // G ^ 0
  QuantileFn shifted(double c) const;     // G + c
  QuantileFn scaled(double lambda) const; // lambda G, lambda >= 0

  Kind kind() const noexcept;

  // Throws DomainError unless 0 < z < 1.
  double operator()(double z) const;

  std::span<const Piece> pieces() const noexcept;

  // Distribution function of the law with this quantile: F(x) and F(x-).
  double cdf(double x) const;
  double cdf_left(double x) const;

  // True when every piece is constant (step quantile, no derivative).
  bool is_step() const noexcept;

  // Non-null only for Kind::Empirical.
  const EmpiricalDistribution* empirical() const noexcept;

  double infimum() const noexcept;
  double supremum() const noexcept;

  class Impl;

 private:
  explicit QuantileFn(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

// Quantile of (1 - eps) F + eps delta_z, with the middle band
// (1-eps)F(z-) < t <= eps + (1-eps)F(z) mapped to z. eps = 0 returns g
// unchanged. Throws DomainError unless 0 <= eps < 1.
QuantileFn contaminate_quantile(const QuantileFn& g, const ContaminationSpec& c);

// lambda G1 + (1 - lambda) G2 (comonotone mixture of quantiles).
QuantileFn mix_quantiles(double lambda, const QuantileFn& g1, const QuantileFn& g2);

}  // namespace lossrisk
