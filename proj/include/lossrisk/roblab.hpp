#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lossrisk/empirical.hpp"
#include "lossrisk/measures.hpp"
#include "lossrisk/quantile.hpp"

namespace lossrisk {

struct UniformComponent {
  double lo;
  double hi;
  double weight;
};

struct AtomComponent {
  double x;
  double weight;
};

// Finite mixture of uniform segments and atoms. Components may not overlap
// (an atom may sit on a segment endpoint) and weights must sum to one. The
// quantile is piecewise linear, so every catalog measure has an exact value.
struct MixtureBase {
  std::vector<UniformComponent> segments;
  std::vector<AtomComponent> atoms;

  QuantileFn quantile() const;
};

// 0.2 U[-10,-2] + 0.3 U[-2,0] + 0.5 U[0,6].
MixtureBase standard_test_base();

struct ContaminationSweep {
  std::vector<double> epsilons;
  std::vector<double> zs;
};

struct ExperimentConfig {
  ExperimentConfig(RiskMeasureSpec s, QuantileFn b) : spec(std::move(s)), base(std::move(b)) {}

  RiskMeasureSpec spec;
  QuantileFn base;
  std::size_t n = 500;
  std::size_t replications = 400;
  std::uint64_t seed = 42;
  ContaminationSweep contamination;
  unsigned threads = 0;  // 0: LOSSRISK_THREADS, else hardware concurrency
};

// Worker count: `requested` if nonzero, else LOSSRISK_THREADS, else hardware
// concurrency; never more than `work_items`.
unsigned resolve_threads(unsigned requested, std::size_t work_items);

// Law of the plug-in estimator rho(G_emp) over R replications of n-samples
// drawn by inverse transform from `sampling`. Replication r is driven by
// replication_seed(seed, r) and results are kept in replication order, so the
// output does not depend on the thread count. Throws ExperimentFailed when
// fewer than 90% of replications evaluate.
EmpiricalDistribution estimator_law(const RiskMeasureSpec& spec, const QuantileFn& sampling,
                                    std::size_t n, std::size_t replications,
                                    std::uint64_t seed, unsigned threads = 0);

EmpiricalDistribution estimator_law(const ExperimentConfig& cfg);

struct RobustnessPoint {
  double z;
  double epsilon;
  double d_p;     // Levy-Prokhorov distance to the uncontaminated estimator law
  double median;  // of the contaminated estimator law
  double q05;
  double q95;
};

struct RobustnessReport {
  std::string rng;
  std::uint64_t seed;
  double base_median;
  std::vector<RobustnessPoint> points;  // epsilon-major, z-minor order
};

// Estimator law under each (z, eps) in the sweep against the uncontaminated
// law. Both laws share replication seeds, so eps = 0 reproduces the base law.
RobustnessReport robustness_experiment(const ExperimentConfig& cfg);

struct ConsistencyPoint {
  std::size_t n;
  double median_abs_error;
};

struct ConsistencyCurve {
  double exact;  // rho(G) evaluated exactly on the base quantile
  std::vector<ConsistencyPoint> points;
};

ConsistencyCurve consistency_curve(const RiskMeasureSpec& spec, const QuantileFn& base,
                                   const std::vector<std::size_t>& n_list,
                                   std::size_t replications, std::uint64_t seed,
                                   unsigned threads = 0);

}  // namespace lossrisk
