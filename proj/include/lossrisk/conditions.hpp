#pragma once

#include <vector>

#include "lossrisk/measures.hpp"

namespace lossrisk {

struct WeakContinuity {
  double delta_star;  // min over entries of the support infimum
  bool robust;        // delta_star > 0
};

// Decides whether some delta in (0,1) has m((0,delta)) = 0 for every entry,
// which for a finite family is exactly delta_star > 0.
WeakContinuity weak_continuity_condition(const PenaltyFamily& family);

struct LebesgueProfile {
  std::vector<double> deltas;  // sorted decreasing
  std::vector<double> sup_mass;  // sup over {v(m) <= c} of m((0, delta))
  bool vacuous;                // no entry has v(m) <= c
  bool converges;              // sup_mass at the smallest delta <= 1e-12
};

inline constexpr double kLebesgueTolerance = 1e-12;

LebesgueProfile lebesgue_condition(const PenaltyFamily& family, double c,
                                   std::vector<double> delta_grid);

// 0.5, 0.25, ... halving down to about 1e-20.
std::vector<double> default_lebesgue_grid();

}  // namespace lossrisk
