#include "lossrisk/robustify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lossrisk/error.hpp"
#include "lossrisk/evaluate.hpp"

namespace lossrisk {
namespace {

void require_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    fail(ErrorCode::DomainError,
         "truncation level must lie in (0,1), got " + std::to_string(delta));
  }
}

void merge_into(std::vector<PenaltyEntry>& out, PenaltyEntry e) {
  for (PenaltyEntry& existing : out) {
    if (existing.measure.approx_equal(e.measure)) {
      existing.penalty = std::min(existing.penalty, e.penalty);
      return;
    }
  }
  out.push_back(std::move(e));
}

}  // namespace

PenaltyFamily TruncatedFamily::to_penalty_family() const { return PenaltyFamily(entries); }

MeasureOn01 pi_map(const MeasureOn01& m, double delta) {
  require_delta(delta);
  double pushed = 0.0;
  std::vector<Atom> atoms;
  for (const Atom& a : m.atoms()) {
    if (a.z <= delta) {
      pushed += a.mass;
    } else {
      atoms.push_back(a);
    }
  }
  std::vector<DensitySegment> segments;
  for (const DensitySegment& s : m.segments()) {
    if (s.b <= delta) {
      pushed += s.height * (s.b - s.a);
    } else if (s.a < delta) {
      pushed += s.height * (delta - s.a);
      segments.push_back(DensitySegment{delta, s.b, s.height});
    } else {
      segments.push_back(s);
    }
  }
  if (pushed > 0.0) atoms.push_back(Atom{delta, pushed});
  return MeasureOn01(std::move(atoms), std::move(segments));
}

MeasureOn01 pi_map(const SpectralDensity& phi, double delta) {
  return pi_map(phi.as_measure(), delta);
}

TruncatedFamily truncate_family(const PenaltyFamily& family, double delta) {
  require_delta(delta);
  TruncatedFamily out{delta, {}};
  for (const PenaltyEntry& e : family.entries()) {
    merge_into(out.entries, PenaltyEntry{pi_map(e.measure, delta), e.penalty});
  }
  return out;
}

TruncatedFamily truncate_family(const std::vector<SpectralEntry>& family, double delta) {
  require_delta(delta);
  TruncatedFamily out{delta, {}};
  for (const SpectralEntry& e : family) {
    merge_into(out.entries, PenaltyEntry{pi_map(e.phi, delta), e.penalty});
  }
  return out;
}

AltTruncatedWeight alt_truncate(const SpectralDensity& phi, double delta) {
  require_delta(delta);
  const double tail = phi.integral(delta, 1.0);
  if (!(tail > 0.0)) {
    fail(ErrorCode::DegenerateInput,
         "spectral weight has no mass above " + std::to_string(delta));
  }
  std::vector<DensitySegment> segments;
  const auto& bp = phi.breakpoints();
  const auto& h = phi.heights();
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double a = std::max(bp[i], delta);
    const double b = bp[i + 1];
    if (b > a && h[i] > 0.0) segments.push_back(DensitySegment{a, b, h[i] / tail});
  }
  return AltTruncatedWeight{MeasureOn01({}, std::move(segments)), false};
}

RepresentationCheck truncated_equals_representation(const QuantileFn& g,
                                                    const SpectralDensity& phi,
                                                    double delta, double tol) {
  const double lhs = eval(RiskMeasureSpec::truncated(RiskMeasureSpec::spectral(phi), delta), g);
  const TruncatedFamily fam = truncate_family(std::vector<SpectralEntry>{{phi, 0.0}}, delta);
  const double rhs = eval_general_fenchel(g, fam.to_penalty_family());
  const double diff = std::abs(lhs - rhs);
  return RepresentationCheck{lhs, rhs, diff, diff <= tol};
}

}  // namespace lossrisk
