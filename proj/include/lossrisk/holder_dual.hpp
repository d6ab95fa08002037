#pragma once

#include <cstddef>

#include "lossrisk/quantile.hpp"

namespace lossrisk {

inline constexpr std::size_t kHolderMaxSupport = 6;
inline constexpr std::size_t kHolderMinResolution = 50;

struct HolderDualResult {
  double primal;    // L^p loss certainty equivalent
  double dual_max;  // best -E[min(X,0) Y] over the grid of Y >= 0, ||Y||_q <= 1
  std::size_t grid_points;
};

// Brute-force check of the L^p dual representation on an empirical law with at
// most six distinct atoms. For p > 1 the grid covers the boundary of the
// q-ball through w_i = P(x_i) Y_i^q on the simplex with `resolution`
// subdivisions; atoms without a loss get Y = 0, which is optimal since they
// contribute nothing. For p = 1 the grid is the box [0,1]^k in steps of
// 1/resolution, maximized coordinatewise (the objective is separable).
//
// Throws InvalidInput for a non-empirical g, p < 1 or resolution < 50, and
// TooLarge for more than six distinct atoms.
HolderDualResult holder_dual_check(const QuantileFn& g, double p, std::size_t resolution);

}  // namespace lossrisk
