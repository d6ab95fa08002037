#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace lossrisk {

struct Atom {
  double z;
  double mass;
};

// Constant density `height` on (a, b).
struct DensitySegment {
  double a;
  double b;
  double height;
};

// Finite measure on (0,1): point masses plus a piecewise-constant density.
class MeasureOn01 {
 public:
  MeasureOn01() = default;
  // Sorts atoms and segments. Throws InvalidInput when atoms repeat, segments
  // overlap, a location leaves (0,1), or the total mass exceeds 1.
  MeasureOn01(std::vector<Atom> atoms, std::vector<DensitySegment> segments);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const std::vector<DensitySegment>& segments() const noexcept { return segments_; }

  double total_mass() const noexcept;
  // m((0, delta)), the open interval.
  double mass_below(double delta) const noexcept;
  // Infimum of the support; 1 for the zero measure.
  double support_infimum() const noexcept;

  // Same atoms and segments up to `tol` in every coordinate.
  bool approx_equal(const MeasureOn01& other, double tol = 1e-12) const noexcept;

 private:
  std::vector<Atom> atoms_;
  std::vector<DensitySegment> segments_;
};

struct PenaltyEntry {
  MeasureOn01 measure;
  double penalty;
};

struct NormalizationCheck {
  double epsilon;
  bool satisfied;
  double best_penalty;  // smallest penalty among entries with mass >= 1 - eps
};

// Finite surrogate for dom(v) with its penalty values.
class PenaltyFamily {
 public:
  // Throws InvalidInput on an empty list or a negative / non-finite penalty.
  explicit PenaltyFamily(std::vector<PenaltyEntry> entries);

  const std::vector<PenaltyEntry>& entries() const noexcept { return entries_; }

  // For each eps, whether some entry has mass >= 1 - eps and penalty <= slack.
  // Reported, never enforced.
  std::vector<NormalizationCheck> normalization(const std::vector<double>& eps_grid,
                                                double slack) const;

 private:
  std::vector<PenaltyEntry> entries_;
};

// Nonincreasing piecewise-constant density phi on (0,1): heights[i] on
// (breakpoints[i], breakpoints[i+1]), zero beyond the last breakpoint.
class SpectralDensity {
 public:
  SpectralDensity(std::vector<double> breakpoints, std::vector<double> heights);

  // (1/beta) 1_(0,beta): the expected tail-loss weight.
  static SpectralDensity tail(double beta);
  static SpectralDensity uniform();

  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<double>& heights() const noexcept { return heights_; }

  double integral() const noexcept { return integral_; }
  double integral(double a, double b) const noexcept;
  double operator()(double z) const noexcept;

  // Integral equals one (class Phi) within 1e-12.
  bool normalized() const noexcept;

  MeasureOn01 as_measure() const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> heights_;
  double integral_ = 0.0;
};

// Utility applied to loss magnitudes x >= 0.
class LossUtility {
 public:
  enum class Kind { Power, Exponential };

  static LossUtility power(double p);          // u(x) = x^p, p >= 1
  static LossUtility exponential(double beta); // u(x) = exp(beta x), beta > 0

  Kind kind() const noexcept { return kind_; }
  double parameter() const noexcept { return param_; }

  double operator()(double x) const;
  double inverse(double y) const;
  double derivative(double x) const;

  // Average of u over a magnitude running linearly from a to b (a, b >= 0).
  // Exponential throws Overflow once beta * max(a, b) exceeds 700.
  double mean_over(double a, double b) const;

  // Largest magnitude the exponential overflow guard admits.
  static constexpr double kExpGuard = 700.0;

 private:
  LossUtility(Kind kind, double param) : kind_(kind), param_(param) {}
  Kind kind_;
  double param_;
};

class RiskMeasureSpec;

namespace spec {

struct VaRLoss {
  double alpha;
};
struct Etl {
  double beta;
};
struct Spectral {
  SpectralDensity phi;
};
struct LossCe {
  LossUtility utility;
};
struct PutPremium {};
struct SpanScenarios {};
struct GeneralFenchel {
  PenaltyFamily family;
};
struct Truncated {
  std::shared_ptr<const RiskMeasureSpec> inner;
  double delta;
};
struct AltTruncated {
  std::shared_ptr<const RiskMeasureSpec> inner;
  double delta;
};

}  // namespace spec

// Tagged description of a loss-based risk measure. Factories validate the
// parameter ranges; Truncated nests at most one level.
class RiskMeasureSpec {
 public:
  using Variant = std::variant<spec::VaRLoss, spec::Etl, spec::Spectral, spec::LossCe,
                               spec::PutPremium, spec::SpanScenarios,
                               spec::GeneralFenchel, spec::Truncated,
                               spec::AltTruncated>;

  static RiskMeasureSpec var_loss(double alpha);
  static RiskMeasureSpec etl(double beta);
  static RiskMeasureSpec spectral(SpectralDensity phi);
  static RiskMeasureSpec loss_ce(LossUtility u);
  static RiskMeasureSpec put_premium();
  static RiskMeasureSpec span_scenarios();
  static RiskMeasureSpec general_fenchel(PenaltyFamily family);
  static RiskMeasureSpec truncated(RiskMeasureSpec inner, double delta);
  // Inner must be Spectral, Etl or PutPremium.
  static RiskMeasureSpec alt_truncated(RiskMeasureSpec inner, double delta);

  const Variant& variant() const noexcept { return v_; }

  // Catalog tag: "var_loss", "etl", "spectral", "loss_ce", "put_premium",
  // "span", "general_fenchel", "truncated", "alt_truncated".
  std::string tag() const;

  // Spectral weight of Spectral / Etl / PutPremium specs; throws InvalidInput
  // for other variants.
  SpectralDensity spectral_weight() const;

  // Convex loss-based measure (ETL, spectral, CE, put premium, general
  // Fenchel, scenario margin). VaR and the truncations are not.
  bool convex() const noexcept;

  // Sure cash loss alpha gets risk alpha (fails only for spectral weights
  // with integral below one, and for families without a unit-mass entry).
  bool cash_normalized() const;

 private:
  explicit RiskMeasureSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

}  // namespace lossrisk
