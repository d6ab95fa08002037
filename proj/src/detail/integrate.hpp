#pragma once

#include <span>

#include "lossrisk/measures.hpp"
#include "lossrisk/quantile.hpp"

namespace lossrisk::detail {

// int_a^b min(G(t), 0) dt, exact for piecewise-linear G.
double loss_integral(std::span<const Piece> pieces, double a, double b);

// int_a^b u(|min(G(t), 0)|) dt, exact for piecewise-linear G.
double utility_integral(std::span<const Piece> pieces, const LossUtility& u, double a,
                        double b);

// int_(0,1) min(G, 0) dm: atoms through point evaluation of g, densities
// through exact piecewise integration.
double measure_loss_integral(const QuantileFn& g, const MeasureOn01& m);

}  // namespace lossrisk::detail
