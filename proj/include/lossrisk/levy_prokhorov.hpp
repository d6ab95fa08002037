#pragma once

#include "lossrisk/empirical.hpp"

namespace lossrisk {

inline constexpr double kDefaultLevyProkhorovTol = 1e-9;

// Levy-Prokhorov distance between two empirical laws: the smallest eps with
//   F1(x - eps) - eps <= F2(x) <= F1(x + eps) + eps  for all x,
// located by bisection to within tol. Throws InvalidInput if tol <= 0.
double levy_prokhorov(const EmpiricalDistribution& f1,
                      const EmpiricalDistribution& f2,
                      double tol = kDefaultLevyProkhorovTol);

// Whether eps satisfies both defining inequalities. For step CDFs it is
// enough to test at the jump points of each CDF shifted by eps.
bool levy_prokhorov_admissible(const EmpiricalDistribution& f1,
                               const EmpiricalDistribution& f2, double eps);

}  // namespace lossrisk
