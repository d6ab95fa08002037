#include "lossrisk/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "lossrisk/evaluate.hpp"

namespace lossrisk {

std::string to_string(AxiomStatus s) {
  switch (s) {
    case AxiomStatus::Pass: return "pass";
    case AxiomStatus::Fail: return "fail";
    case AxiomStatus::NotAsserted: return "not_asserted";
  }
  return "unknown";
}

const AxiomResult* AxiomReport::find(std::string_view axiom) const {
  for (const auto& r : results) {
    if (r.axiom == axiom) return &r;
  }
  return nullptr;
}

namespace {

using Rho = std::function<double(const QuantileFn&)>;

class Check {
 public:
  Check(std::string name, double tol) : name_(std::move(name)), tol_(tol) {}

  double slack(double lhs, double rhs) const {
    return tol_ * std::max({1.0, std::abs(lhs), std::abs(rhs)});
  }

  void equal(double lhs, double rhs, const std::string& what) {
    record(std::abs(lhs - rhs) <= slack(lhs, rhs), lhs, rhs, what);
  }
  void less_equal(double lhs, double rhs, const std::string& what) {
    record(lhs <= rhs + slack(lhs, rhs), lhs, rhs, what);
  }

  AxiomResult finish(bool asserted, std::optional<bool> expected = std::nullopt) && {
    const bool holds = !witness_.has_value();
    AxiomStatus status = AxiomStatus::NotAsserted;
    if (asserted) status = holds ? AxiomStatus::Pass : AxiomStatus::Fail;
    return AxiomResult{name_, status, holds, expected, checks_, witness_};
  }

 private:
  void record(bool ok, double lhs, double rhs, const std::string& what) {
    ++checks_;
    if (!ok && !witness_) witness_ = AxiomWitness{what, lhs, rhs};
  }

  std::string name_;
  double tol_;
  std::size_t checks_ = 0;
  std::optional<AxiomWitness> witness_;
};

std::string describe(std::size_t input, const char* extra, double param) {
  std::ostringstream os;
  os.precision(10);
  os << "input " << input << ", " << extra << "=" << param;
  return os.str();
}

// Both empirical with equal size and sorted samples ordered elementwise.
bool pointwise_le(const QuantileFn& a, const QuantileFn& b) {
  const auto* ea = a.empirical();
  const auto* eb = b.empirical();
  if (ea == nullptr || eb == nullptr || ea->size() != eb->size()) return false;
  for (std::size_t i = 0; i < ea->size(); ++i) {
    if (ea->samples()[i] > eb->samples()[i]) return false;
  }
  return true;
}

std::optional<bool> expected_cash_loss_additivity(const RiskMeasureSpec& spec) {
  const auto& v = spec.variant();
  if (const auto* ce = std::get_if<spec::LossCe>(&v)) {
    if (ce->utility.kind() == LossUtility::Kind::Exponential) return true;
    return ce->utility.parameter() == 1.0;
  }
  if (std::holds_alternative<spec::Etl>(v) || std::holds_alternative<spec::PutPremium>(v) ||
      std::holds_alternative<spec::VaRLoss>(v) ||
      std::holds_alternative<spec::SpanScenarios>(v)) {
    return true;
  }
  if (const auto* s = std::get_if<spec::Spectral>(&v)) return s->phi.normalized();
  return std::nullopt;
}

}  // namespace

AxiomReport axiom_suite(const RiskMeasureSpec& spec, std::span<const QuantileFn> inputs,
                        double tol) {
  Rho rho;
  if (std::holds_alternative<spec::SpanScenarios>(spec.variant())) {
    rho = [](const QuantileFn& g) { return std::max(0.0, -g.infimum()); };
  } else {
    rho = [&spec](const QuantileFn& g) { return eval(spec, g); };
  }

  AxiomReport report{spec.tag(), {}};
  const bool normalized = spec.cash_normalized();
  const bool convex = spec.convex();

  {
    Check c("cash_loss_normalization", tol);
    for (double alpha : kAxiomCashLevels) {
      c.equal(rho(QuantileFn::constant(-alpha)), alpha, describe(0, "alpha", alpha));
    }
    report.results.push_back(std::move(c).finish(normalized, normalized));
  }
  {
    Check c("monotonicity", tol);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const QuantileFn& g = inputs[i];
      const double r = rho(g);
      for (double shift : kAxiomCashShifts) {
        c.less_equal(rho(g.shifted(shift)), r, describe(i, "upward shift", shift));
      }
      c.less_equal(r, rho(g.loss_part()), describe(i, "loss part", 0.0));
      for (std::size_t j = 0; j < inputs.size(); ++j) {
        if (i != j && pointwise_le(g, inputs[j])) {
          c.less_equal(rho(inputs[j]), r, describe(i, "dominated by input", double(j)));
        }
      }
    }
    report.results.push_back(std::move(c).finish(true, true));
  }
  {
    Check c("loss_dependence", tol);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      c.equal(rho(inputs[i]), rho(inputs[i].loss_part()), describe(i, "loss part", 0.0));
    }
    report.results.push_back(std::move(c).finish(true, true));
  }
  {
    Check c("quantile_convexity", tol);
    for (std::size_t i = 0; i + 1 < inputs.size(); i += 2) {
      const QuantileFn& g1 = inputs[i];
      const QuantileFn& g2 = inputs[i + 1];
      const double r1 = rho(g1);
      const double r2 = rho(g2);
      for (double lambda : kAxiomMixWeights) {
        c.less_equal(rho(mix_quantiles(lambda, g1, g2)), lambda * r1 + (1.0 - lambda) * r2,
                     describe(i, "lambda", lambda));
      }
    }
    report.results.push_back(std::move(c).finish(convex, convex ? std::optional<bool>(true)
                                                                : std::nullopt));
  }
  {
    Check c("cash_subadditivity", tol);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const double r = rho(inputs[i]);
      for (double alpha : kAxiomCashShifts) {
        c.less_equal(rho(inputs[i].shifted(-alpha)), r + alpha, describe(i, "alpha", alpha));
      }
    }
    report.results.push_back(
        std::move(c).finish(convex, convex ? std::optional<bool>(true) : std::nullopt));
  }
  {
    Check c("cash_loss_additivity", tol);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const QuantileFn loss = inputs[i].loss_part();
      const double r = rho(loss);
      for (double alpha : kAxiomCashShifts) {
        c.equal(rho(loss.shifted(-alpha)), r + alpha, describe(i, "alpha", alpha));
      }
    }
    report.results.push_back(std::move(c).finish(true, expected_cash_loss_additivity(spec)));
  }
  return report;
}

}  // namespace lossrisk
