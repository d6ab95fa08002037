#include "lossrisk/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lossrisk/error.hpp"
#include "lossrisk/evaluate.hpp"

namespace lossrisk {
namespace {

void require_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    fail(ErrorCode::DomainError, "level must lie in (0,1), got " + std::to_string(delta));
  }
}

double resolve_derivative(const QuantileFn& g, double delta, std::optional<double> given) {
  if (given) {
    if (!std::isfinite(*given)) fail(ErrorCode::MissingDerivative, "non-finite G'(delta)");
    return *given;
  }
  return quantile_derivative(g, delta);
}

// Value of the truncated CE influence function on z < G(delta) when
// G(delta) = 0. For u = x^p with p > 1, u'(0) = 0 and u^{-1} is not
// differentiable at u(0), so the first-order term comes from
// rho(G_eps) ~ (delta ((1-delta) G' eps)^p)^{1/p}.
double zero_case_value(const LossUtility& u, double delta, double rho_delta, double gprime) {
  if (u.kind() == LossUtility::Kind::Power && u.parameter() > 1.0) {
    return std::pow(delta, 1.0 / u.parameter()) * (1.0 - delta) * gprime;
  }
  const double d = u.derivative(rho_delta);
  if (!(d > 0.0)) fail(ErrorCode::DegenerateInput, "u'(rho_delta(G)) = 0");
  return u.derivative(0.0) * delta * (1.0 - delta) * gprime / d;
}

struct TruncatedParts {
  double g_delta;
  SignCase sign;
  double rho_delta;
};

TruncatedParts truncated_parts(const LossUtility& u, const QuantileFn& g, double delta) {
  const double gd = g(delta);
  return TruncatedParts{gd, classify_sign(gd), eval_loss_ce(g.floor_truncated(delta), u)};
}

double negative_case_below(const LossUtility& u, double delta, const TruncatedParts& t,
                           double gprime) {
  const double a = -t.g_delta;
  return (-u(t.rho_delta) + u(a) + delta * (1.0 - delta) * u.derivative(a) * gprime) /
         u.derivative(t.rho_delta);
}

}  // namespace

SignCase classify_sign(double value) {
  if (value > kSignTolerance) return SignCase::Positive;
  if (value < -kSignTolerance) return SignCase::Negative;
  return SignCase::Zero;
}

double quantile_derivative(const QuantileFn& g, double delta) {
  require_delta(delta);
  if (g.is_step()) {
    fail(ErrorCode::MissingDerivative,
         "step quantile has no derivative at " + std::to_string(delta));
  }
  const double h = kDerivativeStep;
  if (!(delta - h > 0.0 && delta + h < 1.0)) {
    fail(ErrorCode::MissingDerivative, "central difference leaves (0,1)");
  }
  const double mid = g(delta);
  const double left = (mid - g(delta - h)) / h;
  const double right = (g(delta + h) - mid) / h;
  if (std::fabs(left - right) > kKinkTolerance * std::max({1.0, std::fabs(left), std::fabs(right)})) {
    fail(ErrorCode::MissingDerivative, "G is not differentiable at " + std::to_string(delta) +
                                           " (one-sided slopes " + std::to_string(left) + ", " +
                                           std::to_string(right) + ")");
  }
  return (g(delta + h) - g(delta - h)) / (2.0 * h);
}

double sensitivity_ce(const LossUtility& u, const QuantileFn& g, double z) {
  const double rho = eval_loss_ce(g, u);
  const double d = u.derivative(rho);
  if (!(d > 0.0)) fail(ErrorCode::DegenerateInput, "u'(rho(G)) = 0");
  return (u(-std::min(z, 0.0)) - u(rho)) / d;
}

double sensitivity_truncated_ce(const LossUtility& u, const QuantileFn& g, double delta,
                                double z, std::optional<double> derivative) {
  require_delta(delta);
  const double fz = g.cdf(z);
  if (!(fz < 1.0)) fail(ErrorCode::PreconditionViolated, "F(z) = 1");
  if (fz - g.cdf_left(z) > 0.0) {
    fail(ErrorCode::PreconditionViolated,
         "F has an atom at z; use the numeric directional derivative");
  }
  const TruncatedParts t = truncated_parts(u, g, delta);
  switch (t.sign) {
    case SignCase::Positive:
      return 0.0;
    case SignCase::Zero: {
      // Inside the band G(delta) counts as exactly zero.
      if (z >= 0.0) return 0.0;
      return zero_case_value(u, delta, t.rho_delta, resolve_derivative(g, delta, derivative));
    }
    case SignCase::Negative: {
      const double gprime = resolve_derivative(g, delta, derivative);
      if (z < t.g_delta) return negative_case_below(u, delta, t, gprime);
      const double d = u.derivative(t.rho_delta);
      double branch = u(-std::min(z, 0.0));
      if (z > t.g_delta) branch -= delta * delta * u.derivative(-t.g_delta) * gprime;
      return (-u(t.rho_delta) + branch) / d;
    }
  }
  return 0.0;
}

double sensitivity_var(const QuantileFn& g, double delta, double z,
                       std::optional<double> density) {
  require_delta(delta);
  double f = 0.0;
  if (density) {
    f = *density;
  } else {
    const double gp = quantile_derivative(g, delta);
    f = gp > 0.0 ? 1.0 / gp : std::numeric_limits<double>::infinity();
  }
  if (!(f > 0.0) || !std::isfinite(f)) {
    fail(ErrorCode::DegenerateInput, "density at G(delta) must be positive and finite");
  }
  const double gd = g(delta);
  if (z > gd) return delta / f;
  if (z < gd) return -(1.0 - delta) / f;
  return 0.0;
}

NumericSensitivity sensitivity_numeric(const RiskMeasureSpec& spec, const QuantileFn& g,
                                       double z, const std::vector<double>& eps_ladder) {
  if (eps_ladder.empty()) fail(ErrorCode::InvalidInput, "empty epsilon ladder");
  for (std::size_t i = 0; i < eps_ladder.size(); ++i) {
    const double e = eps_ladder[i];
    if (!(e > 0.0 && e < 1.0) || (i > 0 && !(e < eps_ladder[i - 1]))) {
      fail(ErrorCode::InvalidInput,
           "epsilon ladder must be strictly decreasing inside (0,1)");
    }
  }
  const double base = eval(spec, g);
  NumericSensitivity out{0.0, eps_ladder, {}};
  out.quotients.reserve(eps_ladder.size());
  for (double e : eps_ladder) {
    out.quotients.push_back((eval(spec, g.contaminated({z, e})) - base) / e);
  }
  const std::size_t k = eps_ladder.size();
  if (k == 1) {
    out.estimate = out.quotients[0];
  } else {
    const double e1 = eps_ladder[k - 2];
    const double e2 = eps_ladder[k - 1];
    out.estimate = (e1 * out.quotients[k - 1] - e2 * out.quotients[k - 2]) / (e1 - e2);
  }
  return out;
}

bool has_analytic_sensitivity(const RiskMeasureSpec& spec) noexcept {
  const auto& v = spec.variant();
  if (std::holds_alternative<spec::LossCe>(v) || std::holds_alternative<spec::VaRLoss>(v)) {
    return true;
  }
  if (const auto* t = std::get_if<spec::Truncated>(&v)) {
    return std::holds_alternative<spec::LossCe>(t->inner->variant());
  }
  return false;
}

double sensitivity_analytic(const RiskMeasureSpec& spec, const QuantileFn& g, double z) {
  const auto& v = spec.variant();
  if (const auto* ce = std::get_if<spec::LossCe>(&v)) return sensitivity_ce(ce->utility, g, z);
  if (const auto* var = std::get_if<spec::VaRLoss>(&v)) {
    switch (classify_sign(g(var->alpha))) {
      case SignCase::Positive: return 0.0;
      case SignCase::Negative: return -sensitivity_var(g, var->alpha, z);
      case SignCase::Zero: return -std::min(sensitivity_var(g, var->alpha, z), 0.0);
    }
  }
  if (const auto* t = std::get_if<spec::Truncated>(&v)) {
    if (const auto* ce = std::get_if<spec::LossCe>(&t->inner->variant())) {
      return sensitivity_truncated_ce(ce->utility, g, t->delta, z);
    }
  }
  fail(ErrorCode::InvalidInput, "no analytic influence function for '" + spec.tag() + "'");
}

BoundednessReport boundedness_report(const LossUtility& u, const QuantileFn& g,
                                     std::optional<double> delta,
                                     const std::vector<double>& z_grid,
                                     std::optional<double> derivative) {
  if (z_grid.empty()) fail(ErrorCode::InvalidInput, "empty z grid");
  std::vector<double> zs = z_grid;
  std::sort(zs.begin(), zs.end());

  BoundednessReport out{-std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity(), true, {}, true};
  for (double z : zs) {
    const double s = delta ? sensitivity_truncated_ce(u, g, *delta, z, derivative)
                           : sensitivity_ce(u, g, z);
    out.values.push_back(s);
    out.grid_sup = std::max(out.grid_sup, s);
  }
  for (std::size_t i = 1; i < out.values.size(); ++i) {
    if (!(out.values[i - 1] > out.values[i])) out.increasing_toward_minus_infinity = false;
  }
  if (delta) {
    const TruncatedParts t = truncated_parts(u, g, *delta);
    switch (t.sign) {
      case SignCase::Positive:
        out.bound = 0.0;
        break;
      case SignCase::Zero:
        out.bound = std::max(
            0.0, zero_case_value(u, *delta, t.rho_delta,
                                 resolve_derivative(g, *delta, derivative)));
        break;
      case SignCase::Negative:
        out.bound = negative_case_below(u, *delta, t, resolve_derivative(g, *delta, derivative));
        break;
    }
  }
  out.holds = out.grid_sup <= out.bound + 1e-9;
  return out;
}

}  // namespace lossrisk
