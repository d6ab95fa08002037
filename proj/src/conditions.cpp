#include "lossrisk/conditions.hpp"

#include <algorithm>
#include <functional>

#include "lossrisk/error.hpp"

namespace lossrisk {

WeakContinuity weak_continuity_condition(const PenaltyFamily& family) {
  double delta_star = 1.0;
  for (const PenaltyEntry& e : family.entries()) {
    delta_star = std::min(delta_star, e.measure.support_infimum());
  }
  return WeakContinuity{delta_star, delta_star > 0.0};
}

LebesgueProfile lebesgue_condition(const PenaltyFamily& family, double c,
                                   std::vector<double> delta_grid) {
  if (!(c >= 0.0)) fail(ErrorCode::InvalidInput, "penalty level c must be >= 0");
  if (delta_grid.empty()) fail(ErrorCode::InvalidInput, "empty delta grid");
  for (double d : delta_grid) {
    if (!(d > 0.0 && d < 1.0)) fail(ErrorCode::InvalidInput, "delta grid must lie in (0,1)");
  }
  std::sort(delta_grid.begin(), delta_grid.end(), std::greater<>());

  LebesgueProfile out{delta_grid, {}, true, false};
  for (const PenaltyEntry& e : family.entries()) {
    if (e.penalty <= c) out.vacuous = false;
  }
  for (double d : out.deltas) {
    double sup = 0.0;
    for (const PenaltyEntry& e : family.entries()) {
      if (e.penalty <= c) sup = std::max(sup, e.measure.mass_below(d));
    }
    out.sup_mass.push_back(sup);
  }
  out.converges = out.sup_mass.back() <= kLebesgueTolerance;
  return out;
}

std::vector<double> default_lebesgue_grid() {
  std::vector<double> grid;
  for (double d = 0.5; d > 1e-20; d *= 0.5) grid.push_back(d);
  return grid;
}

}  // namespace lossrisk
