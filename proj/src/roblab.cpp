#include "lossrisk/roblab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>

#include "lossrisk/error.hpp"
#include "lossrisk/evaluate.hpp"
#include "lossrisk/levy_prokhorov.hpp"
#include "lossrisk/rng.hpp"

namespace lossrisk {

QuantileFn MixtureBase::quantile() const {
  struct Component {
    double lo;
    double hi;
    double weight;
  };
  std::vector<Component> comps;
  for (const auto& s : segments) {
    if (!(s.lo < s.hi) || !std::isfinite(s.lo) || !std::isfinite(s.hi)) {
      fail(ErrorCode::InvalidInput, "uniform component needs finite lo < hi");
    }
    comps.push_back({s.lo, s.hi, s.weight});
  }
  for (const auto& a : atoms) {
    if (!std::isfinite(a.x)) fail(ErrorCode::InvalidInput, "non-finite atom location");
    comps.push_back({a.x, a.x, a.weight});
  }
  if (comps.empty()) fail(ErrorCode::InvalidInput, "mixture has no components");
  std::sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  double total = 0.0;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (!(comps[i].weight > 0.0) || !std::isfinite(comps[i].weight)) {
      fail(ErrorCode::InvalidInput, "mixture weights must be positive");
    }
    if (i > 0 && comps[i].lo < comps[i - 1].hi) {
      fail(ErrorCode::InvalidInput, "mixture components overlap");
    }
    total += comps[i].weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    fail(ErrorCode::InvalidInput, "mixture weights must sum to 1");
  }
  std::vector<double> levels;
  std::vector<double> values;
  double acc = 0.0;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    levels.push_back(acc);
    values.push_back(comps[i].lo);
    acc = i + 1 == comps.size() ? 1.0 : acc + comps[i].weight;
    levels.push_back(acc);
    values.push_back(comps[i].hi);
  }
  return QuantileFn::tabulated(std::move(levels), std::move(values), Interpolation::Linear);
}

MixtureBase standard_test_base() {
  return MixtureBase{{{-10.0, -2.0, 0.2}, {-2.0, 0.0, 0.3}, {0.0, 6.0, 0.5}}, {}};
}

unsigned resolve_threads(unsigned requested, std::size_t work_items) {
  unsigned t = requested;
  if (t == 0) {
    if (const char* env = std::getenv("LOSSRISK_THREADS")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v > 0) t = static_cast<unsigned>(v);
    }
  }
  if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
  const auto cap = static_cast<unsigned>(std::max<std::size_t>(1, work_items));
  return std::min(t, cap);
}

namespace {

struct Replication {
  std::optional<double> value;
  std::string error;
};

double evaluate_sample(const RiskMeasureSpec& spec, std::vector<double> samples) {
  if (std::holds_alternative<spec::SpanScenarios>(spec.variant())) {
    return eval(spec, Scenarios{std::move(samples)});
  }
  return eval(spec, QuantileFn::from_empirical(EmpiricalDistribution(std::move(samples))));
}

Replication run_replication(const RiskMeasureSpec& spec, const QuantileFn& sampling,
                            std::size_t n, std::uint64_t seed, std::size_t r) {
  std::mt19937_64 gen(replication_seed(seed, r));
  std::vector<double> samples(n);
  for (double& x : samples) x = sampling(uniform_open01(gen));
  try {
    return Replication{evaluate_sample(spec, std::move(samples)), {}};
  } catch (const Error& e) {
    return Replication{std::nullopt, e.what()};
  }
}

double quantile_of(const EmpiricalDistribution& law, double level) {
  return empirical_quantile(law, level);
}

}  // namespace

EmpiricalDistribution estimator_law(const RiskMeasureSpec& spec, const QuantileFn& sampling,
                                    std::size_t n, std::size_t replications,
                                    std::uint64_t seed, unsigned threads) {
  if (n < 1 || replications < 1) {
    fail(ErrorCode::InvalidInput, "sample size and replications must be >= 1");
  }
  std::vector<Replication> results(replications);
  const unsigned workers = resolve_threads(threads, replications);
  if (workers <= 1) {
    for (std::size_t r = 0; r < replications; ++r) {
      results[r] = run_replication(spec, sampling, n, seed, r);
    }
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t r = w; r < replications; r += workers) {
          results[r] = run_replication(spec, sampling, n, seed, r);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  std::vector<double> values;
  values.reserve(replications);
  std::size_t failures = 0;
  std::string first_error;
  for (const Replication& rep : results) {
    if (rep.value) {
      values.push_back(*rep.value);
    } else {
      if (failures == 0) first_error = rep.error;
      ++failures;
    }
  }
  if (values.size() * 10 < replications * 9) {
    std::ostringstream os;
    os << failures << " of " << replications << " replications failed; first: " << first_error;
    fail(ErrorCode::ExperimentFailed, os.str());
  }
  return EmpiricalDistribution(std::move(values));
}

EmpiricalDistribution estimator_law(const ExperimentConfig& cfg) {
  return estimator_law(cfg.spec, cfg.base, cfg.n, cfg.replications, cfg.seed, cfg.threads);
}

RobustnessReport robustness_experiment(const ExperimentConfig& cfg) {
  if (cfg.contamination.epsilons.empty() || cfg.contamination.zs.empty()) {
    fail(ErrorCode::InvalidInput, "contamination sweep is empty");
  }
  const EmpiricalDistribution base_law = estimator_law(cfg);
  RobustnessReport report{std::string(kRngName), cfg.seed, quantile_of(base_law, 0.5), {}};
  for (double eps : cfg.contamination.epsilons) {
    for (double z : cfg.contamination.zs) {
      const QuantileFn perturbed = contaminate_quantile(cfg.base, {z, eps});
      const EmpiricalDistribution law = estimator_law(cfg.spec, perturbed, cfg.n,
                                                      cfg.replications, cfg.seed, cfg.threads);
      report.points.push_back(RobustnessPoint{z, eps, levy_prokhorov(law, base_law),
                                              quantile_of(law, 0.5), quantile_of(law, 0.05),
                                              quantile_of(law, 0.95)});
    }
  }
  return report;
}

ConsistencyCurve consistency_curve(const RiskMeasureSpec& spec, const QuantileFn& base,
                                   const std::vector<std::size_t>& n_list,
                                   std::size_t replications, std::uint64_t seed,
                                   unsigned threads) {
  if (n_list.empty()) fail(ErrorCode::InvalidInput, "empty sample-size list");
  if (std::holds_alternative<spec::SpanScenarios>(spec.variant())) {
    fail(ErrorCode::InvalidInput, "scenario margins have no population value");
  }
  ConsistencyCurve curve{eval(spec, base), {}};
  for (std::size_t n : n_list) {
    const EmpiricalDistribution law =
        estimator_law(spec, base, n, replications, seed, threads);
    std::vector<double> errors;
    errors.reserve(law.size());
    for (double v : law.samples()) errors.push_back(std::abs(v - curve.exact));
    curve.points.push_back(
        ConsistencyPoint{n, quantile_of(EmpiricalDistribution(std::move(errors)), 0.5)});
  }
  return curve;
}

}  // namespace lossrisk
