#include "lossrisk/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "detail/integrate.hpp"
#include "lossrisk/error.hpp"
#include "lossrisk/robustify.hpp"

namespace lossrisk {
namespace detail {
namespace {

auto first_piece_after(std::span<const Piece> pieces, double a) {
  return std::partition_point(pieces.begin(), pieces.end(),
                              [a](const Piece& p) { return p.t1 <= a; });
}

}  // namespace

double loss_integral(std::span<const Piece> pieces, double a, double b) {
  double acc = 0.0;
  for (auto it = first_piece_after(pieces, a); it != pieces.end() && it->t0 < b; ++it) {
    const double t0 = std::max(it->t0, a);
    const double t1 = std::min(it->t1, b);
    if (!(t1 > t0)) continue;
    const double v0 = it->at(t0);
    const double v1 = it->at(t1);
    const double len = t1 - t0;
    if (v1 <= 0.0) {
      acc += len * 0.5 * (v0 + v1);
    } else if (v0 < 0.0) {
      const double neg = len * (-v0) / (v1 - v0);
      acc += neg * 0.5 * v0;
    }
  }
  return acc;
}

double utility_integral(std::span<const Piece> pieces, const LossUtility& u, double a,
                        double b) {
  const double u0 = u(0.0);
  double acc = 0.0;
  for (auto it = first_piece_after(pieces, a); it != pieces.end() && it->t0 < b; ++it) {
    const double t0 = std::max(it->t0, a);
    const double t1 = std::min(it->t1, b);
    if (!(t1 > t0)) continue;
    const double v0 = it->at(t0);
    const double v1 = it->at(t1);
    const double len = t1 - t0;
    try {
      if (v1 <= 0.0) {
        acc += len * u.mean_over(-v0, -v1);
      } else if (v0 < 0.0) {
        const double neg = len * (-v0) / (v1 - v0);
        acc += neg * u.mean_over(-v0, 0.0) + (len - neg) * u0;
      } else {
        acc += len * u0;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Overflow) throw;
      std::ostringstream os;
      os.precision(10);
      os << "loss utility overflow on quantile segment (" << t0 << ", " << t1
         << ") with values [" << v0 << ", " << v1 << "]";
      fail(ErrorCode::Overflow, os.str());
    }
  }
  return acc;
}

double measure_loss_integral(const QuantileFn& g, const MeasureOn01& m) {
  double acc = 0.0;
  for (const Atom& at : m.atoms()) {
    if (at.mass > 0.0) acc += at.mass * std::min(g(at.z), 0.0);
  }
  for (const DensitySegment& s : m.segments()) {
    if (s.height > 0.0) acc += s.height * loss_integral(g.pieces(), s.a, s.b);
  }
  return acc;
}

}  // namespace detail

namespace {

double finite_or_throw(double x, const char* what) {
  if (!std::isfinite(x)) {
    fail(ErrorCode::NonIntegrable, std::string(what) + " did not produce a finite value");
  }
  return x;
}

// -0.0 is reported as 0.0.
double clean(double x) { return x == 0.0 ? 0.0 : x; }

}  // namespace

double eval_span(std::span<const double> scenario_pnls) {
  if (scenario_pnls.empty()) fail(ErrorCode::InvalidInput, "empty scenario list");
  double worst = 0.0;
  for (std::size_t i = 0; i < scenario_pnls.size(); ++i) {
    const double x = scenario_pnls[i];
    if (!std::isfinite(x)) {
      fail(ErrorCode::InvalidInput, "non-finite scenario at index " + std::to_string(i));
    }
    worst = std::max(worst, -std::min(x, 0.0));
  }
  return clean(worst);
}

double eval_put_premium(const QuantileFn& g) {
  return clean(finite_or_throw(-detail::loss_integral(g.pieces(), 0.0, 1.0), "put premium"));
}

double eval_etl(const QuantileFn& g, double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    fail(ErrorCode::DomainError, "ETL level must lie in (0,1], got " + std::to_string(beta));
  }
  return clean(finite_or_throw(-detail::loss_integral(g.pieces(), 0.0, beta) / beta,
                               "expected tail-loss"));
}

double eval_var_loss(const QuantileFn& g, double alpha) {
  return clean(-std::min(g(alpha), 0.0));
}

double eval_spectral(const QuantileFn& g, const SpectralDensity& phi) {
  const auto& bp = phi.breakpoints();
  const auto& h = phi.heights();
  double acc = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i] > 0.0) acc += h[i] * detail::loss_integral(g.pieces(), bp[i], bp[i + 1]);
  }
  return clean(finite_or_throw(-acc, "spectral loss measure"));
}

double eval_loss_ce(const QuantileFn& g, const LossUtility& u) {
  const double mean_utility = detail::utility_integral(g.pieces(), u, 0.0, 1.0);
  return clean(finite_or_throw(u.inverse(mean_utility), "loss certainty equivalent"));
}

double eval_general_fenchel(const QuantileFn& g, const PenaltyFamily& family) {
  double best = std::numeric_limits<double>::infinity();
  for (const PenaltyEntry& e : family.entries()) {
    best = std::min(best, detail::measure_loss_integral(g, e.measure) + e.penalty);
  }
  return clean(finite_or_throw(-best, "general Fenchel evaluation"));
}

double eval(const RiskMeasureSpec& spec, const QuantileFn& g) {
  struct Visitor {
    const QuantileFn& g;
    double operator()(const spec::VaRLoss& s) const { return eval_var_loss(g, s.alpha); }
    double operator()(const spec::Etl& s) const { return eval_etl(g, s.beta); }
    double operator()(const spec::Spectral& s) const { return eval_spectral(g, s.phi); }
    double operator()(const spec::LossCe& s) const { return eval_loss_ce(g, s.utility); }
    double operator()(const spec::PutPremium&) const { return eval_put_premium(g); }
    double operator()(const spec::SpanScenarios&) const {
      fail(ErrorCode::InvalidInput, "scenario margin needs a scenario list, not a quantile");
    }
    double operator()(const spec::GeneralFenchel& s) const {
      return eval_general_fenchel(g, s.family);
    }
    double operator()(const spec::Truncated& s) const {
      return eval(*s.inner, g.floor_truncated(s.delta));
    }
    double operator()(const spec::AltTruncated& s) const {
      const AltTruncatedWeight w = alt_truncate(s.inner->spectral_weight(), s.delta);
      return clean(finite_or_throw(-detail::measure_loss_integral(g, w.weight),
                                   "alternative truncation"));
    }
  };
  return std::visit(Visitor{g}, spec.variant());
}

double eval(const RiskMeasureSpec& spec, const Scenarios& scenarios) {
  if (!std::holds_alternative<spec::SpanScenarios>(spec.variant())) {
    fail(ErrorCode::InvalidInput,
         "measure '" + spec.tag() + "' needs a quantile function, not a scenario list");
  }
  return eval_span(scenarios.pnls);
}

double eval(const RiskMeasureSpec& spec, const MeasureInput& input) {
  return std::visit([&spec](const auto& in) { return eval(spec, in); }, input);
}

}  // namespace lossrisk
