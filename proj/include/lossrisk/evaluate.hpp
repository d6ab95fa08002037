#pragma once

#include <span>
#include <variant>
#include <vector>

#include "lossrisk/measures.hpp"
#include "lossrisk/quantile.hpp"

namespace lossrisk {

// Raw scenario P&Ls for the scenario-margin measure (not probability weighted).
struct Scenarios {
  std::vector<double> pnls;
};

using MeasureInput = std::variant<QuantileFn, Scenarios>;

// max_i -min(X(w_i), 0). Throws InvalidInput on an empty list.
double eval_span(std::span<const double> scenario_pnls);

// -int_0^1 min(G, 0).
double eval_put_premium(const QuantileFn& g);

// -(1/beta) int_0^beta min(G, 0). Throws DomainError unless 0 < beta <= 1.
double eval_etl(const QuantileFn& g, double beta);

// -min(G(alpha), 0).
double eval_var_loss(const QuantileFn& g, double alpha);

// -int_0^1 min(G, 0) phi.
double eval_spectral(const QuantileFn& g, const SpectralDensity& phi);

// u^{-1}( int_0^1 u(|min(G, 0)|) ).
double eval_loss_ce(const QuantileFn& g, const LossUtility& u);

// -min over entries of { int min(G, 0) dm + v(m) }.
double eval_general_fenchel(const QuantileFn& g, const PenaltyFamily& family);

// Dispatch over the catalog. Truncated(inner, delta) evaluates inner on
// G(. v delta). A scenario list is accepted only by SpanScenarios and a
// quantile only by the other variants; mismatches throw InvalidInput.
double eval(const RiskMeasureSpec& spec, const QuantileFn& g);
double eval(const RiskMeasureSpec& spec, const Scenarios& scenarios);
double eval(const RiskMeasureSpec& spec, const MeasureInput& input);

}  // namespace lossrisk
