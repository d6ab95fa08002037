#pragma once

#include <optional>
#include <vector>

#include "lossrisk/measures.hpp"
#include "lossrisk/quantile.hpp"

namespace lossrisk {

// Band around zero inside which G(delta) is classified as zero.
inline constexpr double kSignTolerance = 1e-9;
// Step of the central difference used for G'(delta).
inline constexpr double kDerivativeStep = 1e-5;
// Relative disagreement of the one-sided slopes that marks a kink at delta.
inline constexpr double kKinkTolerance = 1e-4;

enum class SignCase { Positive, Zero, Negative };

SignCase classify_sign(double value);

// G'(delta) by central difference. Throws MissingDerivative for step
// quantiles (empirical or step-tabulated), at kinks where the one-sided
// slopes disagree, and when delta +- h leaves (0,1).
double quantile_derivative(const QuantileFn& g, double delta);

// Influence function of the loss certainty equivalent:
//   (u(|z ^ 0|) - u(rho(G))) / u'(rho(G)).
// Throws DegenerateInput when u'(rho(G)) = 0.
double sensitivity_ce(const LossUtility& u, const QuantileFn& g, double z);

// Influence function of the delta-truncated certainty equivalent, by the sign
// of G(delta):
//   G(delta) > 0:  0
//   G(delta) = 0:  0 for z >= G(delta); delta^{1/p} (1-delta) G'(delta) for
//                  z < G(delta) with u = x^p, otherwise
//                  u'(0) delta (1-delta) G'(delta) / u'(rho_delta)
//   G(delta) < 0:  [-u(rho_delta) + b(z)] / u'(rho_delta) with
//                  b(z) = u(|z^0|) - delta^2 u'(|G(delta)|) G'(delta)   z > G(delta)
//                         u(|z^0|)                                     z = G(delta)
//                         u(|G(delta)|) + delta(1-delta) u'(|G(delta)|) G'(delta)
//                                                                      z < G(delta)
// G'(delta) is taken from `derivative` when given, else by central difference.
// Throws PreconditionViolated when F(z) = 1 or F has an atom at z, and
// MissingDerivative when G'(delta) is needed but unavailable.
double sensitivity_truncated_ce(const LossUtility& u, const QuantileFn& g, double delta,
                                double z, std::optional<double> derivative = std::nullopt);

// Influence function of the quantile G(delta):
//   delta / f   for z > G(delta),   0 at z = G(delta),   -(1-delta) / f below,
// with f the density at G(delta) (given, or 1 / G'(delta)).
// Throws DegenerateInput when f is not positive and finite.
double sensitivity_var(const QuantileFn& g, double delta, double z,
                       std::optional<double> density = std::nullopt);

struct NumericSensitivity {
  double estimate;                 // first-order Richardson over the two smallest eps
  std::vector<double> epsilons;
  std::vector<double> quotients;   // (rho(G_eps) - rho(G)) / eps
};

inline const std::vector<double> kDefaultEpsLadder{1e-2, 1e-3, 1e-4};

// Difference quotients of rho along (1-eps) F + eps delta_z. The ladder must be
// nonempty, strictly decreasing and inside (0,1).
NumericSensitivity sensitivity_numeric(const RiskMeasureSpec& spec, const QuantileFn& g,
                                       double z,
                                       const std::vector<double>& eps_ladder = kDefaultEpsLadder);

// Analytic influence function where one exists: LossCe, Truncated(LossCe), and
// VaRLoss (loss sign: -S_quantile when G(alpha) < 0, 0 when G(alpha) > 0).
// Throws InvalidInput for other variants.
double sensitivity_analytic(const RiskMeasureSpec& spec, const QuantileFn& g, double z);

bool has_analytic_sensitivity(const RiskMeasureSpec& spec) noexcept;

struct BoundednessReport {
  double grid_sup;
  double bound;  // +inf for the untruncated certainty equivalent
  bool holds;    // grid_sup <= bound + 1e-9
  std::vector<double> values;
  bool increasing_toward_minus_infinity;  // strict increase as z decreases
};

// Supremum over z_grid of the truncated CE influence function against the
// three-case bound (the z < G(delta) value, or 0 when G(delta) > 0). Without
// delta the untruncated influence function is profiled and the bound is +inf.
BoundednessReport boundedness_report(const LossUtility& u, const QuantileFn& g,
                                     std::optional<double> delta,
                                     const std::vector<double>& z_grid,
                                     std::optional<double> derivative = std::nullopt);

}  // namespace lossrisk
