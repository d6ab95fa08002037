#include "lossrisk/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lossrisk/error.hpp"

namespace lossrisk {
namespace {

constexpr double kMassSlack = 1e-12;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

bool is_prob_open(double x) { return x > 0.0 && x < 1.0; }

}  // namespace

// ---------------------------------------------------------------------------
// MeasureOn01

MeasureOn01::MeasureOn01(std::vector<Atom> atoms, std::vector<DensitySegment> segments)
    : atoms_(std::move(atoms)), segments_(std::move(segments)) {
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& x, const Atom& y) { return x.z < y.z; });
  std::sort(segments_.begin(), segments_.end(),
            [](const DensitySegment& x, const DensitySegment& y) { return x.a < y.a; });
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const Atom& at = atoms_[i];
    if (!is_prob_open(at.z) || !(at.mass >= 0.0) || !std::isfinite(at.mass)) {
      fail(ErrorCode::InvalidInput, "atom (" + fmt(at.z) + ", " + fmt(at.mass) +
                                        ") must sit in (0,1) with finite mass >= 0");
    }
    if (i > 0 && atoms_[i - 1].z == at.z) {
      fail(ErrorCode::InvalidInput, "duplicate atom at " + fmt(at.z));
    }
  }
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const DensitySegment& s = segments_[i];
    if (!(s.a >= 0.0 && s.a < s.b && s.b <= 1.0) || !(s.height >= 0.0) ||
        !std::isfinite(s.height)) {
      fail(ErrorCode::InvalidInput, "segment (" + fmt(s.a) + ", " + fmt(s.b) + ", " +
                                        fmt(s.height) + ") is malformed");
    }
    if (i > 0 && segments_[i - 1].b > s.a) {
      fail(ErrorCode::InvalidInput, "segments overlap at " + fmt(s.a));
    }
  }
  if (total_mass() > 1.0 + kMassSlack) {
    fail(ErrorCode::InvalidInput, "total mass " + fmt(total_mass()) + " exceeds 1");
  }
}

double MeasureOn01::total_mass() const noexcept {
  double m = 0.0;
  for (const Atom& a : atoms_) m += a.mass;
  for (const DensitySegment& s : segments_) m += s.height * (s.b - s.a);
  return m;
}

double MeasureOn01::mass_below(double delta) const noexcept {
  double m = 0.0;
  for (const Atom& a : atoms_) {
    if (a.z < delta) m += a.mass;
  }
  for (const DensitySegment& s : segments_) {
    if (s.a < delta) m += s.height * (std::min(s.b, delta) - s.a);
  }
  return m;
}

double MeasureOn01::support_infimum() const noexcept {
  double inf = 1.0;
  for (const Atom& a : atoms_) {
    if (a.mass > 0.0) inf = std::min(inf, a.z);
  }
  for (const DensitySegment& s : segments_) {
    if (s.height > 0.0) inf = std::min(inf, s.a);
  }
  return inf;
}

bool MeasureOn01::approx_equal(const MeasureOn01& other, double tol) const noexcept {
  if (atoms_.size() != other.atoms_.size() ||
      segments_.size() != other.segments_.size()) {
    return false;
  }
  auto close = [tol](double x, double y) { return std::abs(x - y) <= tol; };
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!close(atoms_[i].z, other.atoms_[i].z) ||
        !close(atoms_[i].mass, other.atoms_[i].mass)) {
      return false;
    }
  }
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    const auto& t = other.segments_[i];
    if (!close(s.a, t.a) || !close(s.b, t.b) || !close(s.height, t.height)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// PenaltyFamily

PenaltyFamily::PenaltyFamily(std::vector<PenaltyEntry> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) fail(ErrorCode::InvalidInput, "penalty family is empty");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const double v = entries_[i].penalty;
    if (!std::isfinite(v) || v < 0.0) {
      fail(ErrorCode::InvalidInput,
           "penalty of entry " + std::to_string(i) + " must be finite and >= 0");
    }
  }
}

std::vector<NormalizationCheck> PenaltyFamily::normalization(
    const std::vector<double>& eps_grid, double slack) const {
  std::vector<NormalizationCheck> out;
  out.reserve(eps_grid.size());
  for (double eps : eps_grid) {
    double best = std::numeric_limits<double>::infinity();
    for (const PenaltyEntry& e : entries_) {
      if (e.measure.total_mass() >= 1.0 - eps - kMassSlack) {
        best = std::min(best, e.penalty);
      }
    }
    out.push_back(NormalizationCheck{eps, best <= slack, best});
  }
  return out;
}

// ---------------------------------------------------------------------------
// SpectralDensity

SpectralDensity::SpectralDensity(std::vector<double> breakpoints,
                                 std::vector<double> heights)
    : breakpoints_(std::move(breakpoints)), heights_(std::move(heights)) {
  if (heights_.empty() || breakpoints_.size() != heights_.size() + 1) {
    fail(ErrorCode::InvalidInput,
         "spectral density needs k+1 breakpoints for k heights (k >= 1)");
  }
  if (breakpoints_.front() != 0.0) {
    fail(ErrorCode::InvalidInput, "spectral density must start at breakpoint 0");
  }
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] > breakpoints_[i - 1]) || breakpoints_[i] > 1.0) {
      fail(ErrorCode::InvalidInput,
           "breakpoints must increase strictly within [0,1]");
    }
  }
  for (std::size_t i = 0; i < heights_.size(); ++i) {
    if (!(heights_[i] >= 0.0) || !std::isfinite(heights_[i])) {
      fail(ErrorCode::InvalidInput, "density heights must be finite and >= 0");
    }
    if (i > 0 && heights_[i] > heights_[i - 1]) {
      fail(ErrorCode::InvalidInput, "density heights must be nonincreasing");
    }
    integral_ += heights_[i] * (breakpoints_[i + 1] - breakpoints_[i]);
  }
  if (!(integral_ > 0.0) || integral_ > 1.0 + kMassSlack) {
    fail(ErrorCode::InvalidInput,
         "density integral " + fmt(integral_) + " must lie in (0,1]");
  }
}

SpectralDensity SpectralDensity::tail(double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    fail(ErrorCode::DomainError, "tail level must lie in (0,1], got " + fmt(beta));
  }
  return SpectralDensity({0.0, beta}, {1.0 / beta});
}

SpectralDensity SpectralDensity::uniform() { return SpectralDensity({0.0, 1.0}, {1.0}); }

double SpectralDensity::integral(double a, double b) const noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < heights_.size(); ++i) {
    const double lo = std::max(a, breakpoints_[i]);
    const double hi = std::min(b, breakpoints_[i + 1]);
    if (hi > lo) acc += heights_[i] * (hi - lo);
  }
  return acc;
}

double SpectralDensity::operator()(double z) const noexcept {
  for (std::size_t i = 0; i < heights_.size(); ++i) {
    if (z > breakpoints_[i] && z < breakpoints_[i + 1]) return heights_[i];
  }
  return 0.0;
}

bool SpectralDensity::normalized() const noexcept {
  return std::abs(integral_ - 1.0) <= kMassSlack;
}

MeasureOn01 SpectralDensity::as_measure() const {
  std::vector<DensitySegment> segs;
  for (std::size_t i = 0; i < heights_.size(); ++i) {
    if (heights_[i] > 0.0) {
      segs.push_back(DensitySegment{breakpoints_[i], breakpoints_[i + 1], heights_[i]});
    }
  }
  return MeasureOn01({}, std::move(segs));
}

// ---------------------------------------------------------------------------
// LossUtility

LossUtility LossUtility::power(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    fail(ErrorCode::DomainError, "power utility needs p >= 1, got " + fmt(p));
  }
  return LossUtility(Kind::Power, p);
}

LossUtility LossUtility::exponential(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    fail(ErrorCode::DomainError, "exponential utility needs beta > 0, got " + fmt(beta));
  }
  return LossUtility(Kind::Exponential, beta);
}

namespace {
void exp_guard(double beta, double x) {
  if (beta * x > LossUtility::kExpGuard) {
    fail(ErrorCode::Overflow, "exponential utility overflow at loss magnitude " + fmt(x));
  }
}
}  // namespace

double LossUtility::operator()(double x) const {
  if (kind_ == Kind::Power) return param_ == 1.0 ? x : std::pow(x, param_);
  exp_guard(param_, x);
  return std::exp(param_ * x);
}

double LossUtility::inverse(double y) const {
  if (kind_ == Kind::Power) return param_ == 1.0 ? y : std::pow(y, 1.0 / param_);
  return std::log(y) / param_;
}

double LossUtility::derivative(double x) const {
  if (kind_ == Kind::Power) {
    return param_ == 1.0 ? 1.0 : param_ * std::pow(x, param_ - 1.0);
  }
  exp_guard(param_, x);
  return param_ * std::exp(param_ * x);
}

double LossUtility::mean_over(double a, double b) const {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  if (kind_ == Kind::Power) {
    const double p = param_;
    if (lo == hi) return (*this)(lo);
    if (lo == 0.0) return (*this)(hi) / (p + 1.0);
    // (hi^{p+1} - lo^{p+1}) / ((p+1)(hi-lo)), written to stay accurate as hi -> lo.
    const double r = (hi - lo) / lo;
    return (*this)(lo) * std::expm1((p + 1.0) * std::log1p(r)) / ((p + 1.0) * r);
  }
  exp_guard(param_, hi);
  const double d = param_ * (hi - lo);
  if (d == 0.0) return std::exp(param_ * lo);
  return std::exp(param_ * lo) * std::expm1(d) / d;
}

// ---------------------------------------------------------------------------
// RiskMeasureSpec

RiskMeasureSpec RiskMeasureSpec::var_loss(double alpha) {
  if (!is_prob_open(alpha)) {
    fail(ErrorCode::DomainError, "VaR level must lie in (0,1), got " + fmt(alpha));
  }
  return RiskMeasureSpec(spec::VaRLoss{alpha});
}

RiskMeasureSpec RiskMeasureSpec::etl(double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    fail(ErrorCode::DomainError, "ETL level must lie in (0,1], got " + fmt(beta));
  }
  return RiskMeasureSpec(spec::Etl{beta});
}

RiskMeasureSpec RiskMeasureSpec::spectral(SpectralDensity phi) {
  return RiskMeasureSpec(spec::Spectral{std::move(phi)});
}

RiskMeasureSpec RiskMeasureSpec::loss_ce(LossUtility u) {
  return RiskMeasureSpec(spec::LossCe{u});
}

RiskMeasureSpec RiskMeasureSpec::put_premium() { return RiskMeasureSpec(spec::PutPremium{}); }

RiskMeasureSpec RiskMeasureSpec::span_scenarios() {
  return RiskMeasureSpec(spec::SpanScenarios{});
}

RiskMeasureSpec RiskMeasureSpec::general_fenchel(PenaltyFamily family) {
  return RiskMeasureSpec(spec::GeneralFenchel{std::move(family)});
}

RiskMeasureSpec RiskMeasureSpec::truncated(RiskMeasureSpec inner, double delta) {
  if (!is_prob_open(delta)) {
    fail(ErrorCode::DomainError, "truncation level must lie in (0,1), got " + fmt(delta));
  }
  const auto& iv = inner.variant();
  if (std::holds_alternative<spec::Truncated>(iv) ||
      std::holds_alternative<spec::AltTruncated>(iv)) {
    fail(ErrorCode::InvalidInput, "truncated specs nest at most one level");
  }
  if (std::holds_alternative<spec::SpanScenarios>(iv)) {
    fail(ErrorCode::InvalidInput, "scenario margins cannot be truncated");
  }
  return RiskMeasureSpec(
      spec::Truncated{std::make_shared<const RiskMeasureSpec>(std::move(inner)), delta});
}

RiskMeasureSpec RiskMeasureSpec::alt_truncated(RiskMeasureSpec inner, double delta) {
  if (!is_prob_open(delta)) {
    fail(ErrorCode::DomainError, "truncation level must lie in (0,1), got " + fmt(delta));
  }
  const auto& iv = inner.variant();
  if (!std::holds_alternative<spec::Spectral>(iv) && !std::holds_alternative<spec::Etl>(iv) &&
      !std::holds_alternative<spec::PutPremium>(iv)) {
    fail(ErrorCode::InvalidInput, "alternative truncation needs a spectral inner measure");
  }
  return RiskMeasureSpec(spec::AltTruncated{
      std::make_shared<const RiskMeasureSpec>(std::move(inner)), delta});
}

std::string RiskMeasureSpec::tag() const {
  struct Visitor {
    std::string operator()(const spec::VaRLoss&) const { return "var_loss"; }
    std::string operator()(const spec::Etl&) const { return "etl"; }
    std::string operator()(const spec::Spectral&) const { return "spectral"; }
    std::string operator()(const spec::LossCe&) const { return "loss_ce"; }
    std::string operator()(const spec::PutPremium&) const { return "put_premium"; }
    std::string operator()(const spec::SpanScenarios&) const { return "span"; }
    std::string operator()(const spec::GeneralFenchel&) const { return "general_fenchel"; }
    std::string operator()(const spec::Truncated&) const { return "truncated"; }
    std::string operator()(const spec::AltTruncated&) const { return "alt_truncated"; }
  };
  return std::visit(Visitor{}, v_);
}

SpectralDensity RiskMeasureSpec::spectral_weight() const {
  if (const auto* s = std::get_if<spec::Spectral>(&v_)) return s->phi;
  if (const auto* e = std::get_if<spec::Etl>(&v_)) return SpectralDensity::tail(e->beta);
  if (std::holds_alternative<spec::PutPremium>(v_)) return SpectralDensity::uniform();
  fail(ErrorCode::InvalidInput, "spec '" + tag() + "' has no spectral weight");
}

bool RiskMeasureSpec::convex() const noexcept {
  return std::holds_alternative<spec::Etl>(v_) || std::holds_alternative<spec::Spectral>(v_) ||
         std::holds_alternative<spec::LossCe>(v_) ||
         std::holds_alternative<spec::PutPremium>(v_) ||
         std::holds_alternative<spec::GeneralFenchel>(v_) ||
         std::holds_alternative<spec::SpanScenarios>(v_);
}

bool RiskMeasureSpec::cash_normalized() const {
  if (const auto* s = std::get_if<spec::Spectral>(&v_)) return s->phi.normalized();
  if (const auto* g = std::get_if<spec::GeneralFenchel>(&v_)) {
    for (const auto& e : g->family.entries()) {
      if (e.penalty == 0.0 && std::abs(e.measure.total_mass() - 1.0) <= kMassSlack) {
        return true;
      }
    }
    return false;
  }
  if (const auto* t = std::get_if<spec::Truncated>(&v_)) return t->inner->cash_normalized();
  return true;
}

}  // namespace lossrisk
