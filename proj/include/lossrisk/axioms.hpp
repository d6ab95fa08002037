#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lossrisk/measures.hpp"
#include "lossrisk/quantile.hpp"

namespace lossrisk {

enum class AxiomStatus {
  Pass,
  Fail,
  NotAsserted,  // checked and reported, but not a property of this measure
};

std::string to_string(AxiomStatus s);

struct AxiomWitness {
  std::string description;
  double lhs;
  double rhs;
};

struct AxiomResult {
  std::string axiom;
  AxiomStatus status;
  bool observed_holds;
  std::optional<bool> expected_to_hold;
  std::size_t checks;
  std::optional<AxiomWitness> witness;  // first violation found
};

struct AxiomReport {
  std::string measure;
  std::vector<AxiomResult> results;

  const AxiomResult* find(std::string_view axiom) const;
};

// Cash levels used by the normalization and cash-shift checks.
inline constexpr double kAxiomCashLevels[] = {0.0, 0.5, 1.0, 10.0};
inline constexpr double kAxiomCashShifts[] = {0.5, 2.0};
inline constexpr double kAxiomMixWeights[] = {0.25, 0.5, 0.75};

// Property checks on the given inputs:
//   cash_loss_normalization  rho(-alpha) = alpha
//   monotonicity             G1 <= G2  =>  rho(G1) >= rho(G2)
//   loss_dependence          rho(G) = rho(G ^ 0)
//   quantile_convexity       rho(l G1 + (1-l) G2) <= l rho(G1) + (1-l) rho(G2)
//   cash_subadditivity       rho(G - alpha) <= rho(G) + alpha
//   cash_loss_additivity     rho(G - alpha) = rho(G) + alpha for G <= 0
// Comparisons use tol * max(1, |lhs|, |rhs|). Violations are reported as
// data; the function does not throw on a failed property.
//
// SpanScenarios is evaluated on the quantile as its largest loss, which for
// empirical inputs equals the scenario margin over the samples.
AxiomReport axiom_suite(const RiskMeasureSpec& spec, std::span<const QuantileFn> inputs,
                        double tol);

}  // namespace lossrisk
