#include "lossrisk/holder_dual.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lossrisk/error.hpp"
#include "lossrisk/evaluate.hpp"

namespace lossrisk {
namespace {

struct SupportPoint {
  double loss;  // |min(x, 0)|
  double prob;
};

std::vector<SupportPoint> loss_support(const EmpiricalDistribution& d) {
  const auto& xs = d.samples();
  const double n = static_cast<double>(xs.size());
  std::vector<SupportPoint> atoms;
  std::size_t distinct = 0;
  std::size_t i = 0;
  while (i < xs.size()) {
    std::size_t j = i;
    while (j < xs.size() && xs[j] == xs[i]) ++j;
    ++distinct;
    if (xs[i] < 0.0) atoms.push_back(SupportPoint{-xs[i], static_cast<double>(j - i) / n});
    i = j;
  }
  if (distinct > kHolderMaxSupport) {
    fail(ErrorCode::TooLarge, "support has " + std::to_string(distinct) +
                                  " distinct atoms, at most " +
                                  std::to_string(kHolderMaxSupport) + " allowed");
  }
  return atoms;
}

// Maximum of sum_i table[i][j_i] over compositions j_0 + ... + j_{k-1} = left.
void search(const std::vector<std::vector<double>>& table, std::size_t coord,
            std::size_t left, double partial, double& best, std::size_t& visited) {
  if (coord + 1 == table.size()) {
    ++visited;
    best = std::max(best, partial + table[coord][left]);
    return;
  }
  for (std::size_t j = 0; j <= left; ++j) {
    search(table, coord + 1, left - j, partial + table[coord][j], best, visited);
  }
}

}  // namespace

HolderDualResult holder_dual_check(const QuantileFn& g, double p, std::size_t resolution) {
  const EmpiricalDistribution* d = g.empirical();
  if (d == nullptr) fail(ErrorCode::InvalidInput, "Holder dual check needs an empirical quantile");
  if (!(p >= 1.0) || !std::isfinite(p)) fail(ErrorCode::InvalidInput, "p must be >= 1");
  if (resolution < kHolderMinResolution) {
    fail(ErrorCode::InvalidInput, "grid resolution must be at least " +
                                      std::to_string(kHolderMinResolution));
  }
  const std::vector<SupportPoint> atoms = loss_support(*d);
  const double primal = eval_loss_ce(g, LossUtility::power(p));
  if (atoms.empty()) return HolderDualResult{primal, 0.0, 1};

  const double n_steps = static_cast<double>(resolution);
  if (p == 1.0) {
    // ||Y||_inf <= 1: every coordinate ranges over {0, 1/N, ..., 1} independently.
    double dual = 0.0;
    for (const SupportPoint& a : atoms) {
      double best = 0.0;
      for (std::size_t j = 0; j <= resolution; ++j) {
        best = std::max(best, a.prob * a.loss * (static_cast<double>(j) / n_steps));
      }
      dual += best;
    }
    return HolderDualResult{primal, dual, (resolution + 1) * atoms.size()};
  }

  // With w_i = P_i Y_i^q on the simplex, the objective sum_i P_i loss_i Y_i
  // becomes sum_i loss_i P_i^{1-1/q} w_i^{1/q}.
  const double q = p / (p - 1.0);
  std::vector<std::vector<double>> table(atoms.size(),
                                         std::vector<double>(resolution + 1, 0.0));
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const double c = atoms[i].loss * std::pow(atoms[i].prob, 1.0 - 1.0 / q);
    for (std::size_t j = 0; j <= resolution; ++j) {
      table[i][j] = c * std::pow(static_cast<double>(j) / n_steps, 1.0 / q);
    }
  }
  double best = 0.0;
  std::size_t visited = 0;
  search(table, 0, resolution, 0.0, best, visited);
  return HolderDualResult{primal, best, visited};
}

}  // namespace lossrisk
