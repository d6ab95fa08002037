#include "lossrisk/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lossrisk/error.hpp"

namespace lossrisk {

double Piece::at(double t) const noexcept {
  if (v0 == v1 || t <= t0) return v0;
  if (t >= t1) return v1;
  return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
}

namespace {

void require_level(double z) {
  if (!(z > 0.0 && z < 1.0)) {
    fail(ErrorCode::DomainError,
         "quantile level must lie in (0,1), got " + std::to_string(z));
  }
}

// Measure of {t in piece : G(t) <= x} (strict: G(t) < x), summed over pieces.
double cdf_from_pieces(std::span<const Piece> pieces, double x, bool strict) {
  double acc = 0.0;
  for (const Piece& p : pieces) {
    const double len = p.length();
    if (len <= 0.0) continue;
    if (p.constant()) {
      if (strict ? p.v0 < x : p.v0 <= x) acc += len;
      continue;
    }
    if (strict ? x > p.v1 : x >= p.v1) {
      acc += len;
    } else if (strict ? x > p.v0 : x >= p.v0) {
      acc += len * (x - p.v0) / (p.v1 - p.v0);
    }
  }
  return std::clamp(acc, 0.0, 1.0);
}

void append_clipped(std::vector<Piece>& out, const Piece& p, double a, double b) {
  if (p.t1 <= a || p.t0 >= b) return;
  const double t0 = std::max(p.t0, a);
  const double t1 = std::min(p.t1, b);
  if (t1 > t0) out.push_back(Piece{t0, t1, p.at(t0), p.at(t1)});
}

const Piece& piece_containing(std::span<const Piece> pieces, double t) {
  auto it = std::partition_point(pieces.begin(), pieces.end(),
                                 [t](const Piece& p) { return p.t1 <= t; });
  if (it == pieces.end()) --it;
  return *it;
}

}  // namespace

class QuantileFn::Impl {
 public:
  explicit Impl(Kind k) : kind(k) {}
  virtual ~Impl() = default;

  virtual double eval(double z) const = 0;
  virtual double cdf(double x) const { return cdf_from_pieces(pieces, x, false); }
  virtual double cdf_left(double x) const { return cdf_from_pieces(pieces, x, true); }
  virtual const EmpiricalDistribution* empirical() const { return nullptr; }

  Kind kind;
  std::vector<Piece> pieces;
};

namespace {

using Impl = QuantileFn::Impl;
using Kind = QuantileFn::Kind;

class EmpiricalImpl final : public Impl {
 public:
  explicit EmpiricalImpl(EmpiricalDistribution d)
      : Impl(Kind::Empirical), dist_(std::move(d)) {
    const auto& xs = dist_.samples();
    const double n = static_cast<double>(xs.size());
    pieces.reserve(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
      pieces.push_back(Piece{static_cast<double>(k) / n,
                             static_cast<double>(k + 1) / n, xs[k], xs[k]});
    }
  }

  double eval(double z) const override { return empirical_quantile(dist_, z); }
  double cdf(double x) const override { return dist_.cdf(x); }
  double cdf_left(double x) const override { return dist_.cdf_left(x); }
  const EmpiricalDistribution* empirical() const override { return &dist_; }

 private:
  EmpiricalDistribution dist_;
};

class TabulatedImpl final : public Impl {
 public:
  TabulatedImpl(std::vector<double> levels, std::vector<double> values,
                Interpolation rule)
      : Impl(Kind::Tabulated),
        levels_(std::move(levels)),
        values_(std::move(values)),
        rule_(rule) {
    if (levels_.empty() || levels_.size() != values_.size()) {
      fail(ErrorCode::InvalidInput,
           "tabulated quantile needs equally many (nonzero) levels and values");
    }
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      if (!std::isfinite(levels_[i]) || !std::isfinite(values_[i]) ||
          levels_[i] < 0.0 || levels_[i] > 1.0) {
        fail(ErrorCode::InvalidInput,
             "tabulated node " + std::to_string(i) + " is out of range");
      }
      if (i > 0 && (levels_[i] < levels_[i - 1] || values_[i] < values_[i - 1])) {
        fail(ErrorCode::InvalidInput,
             "tabulated nodes must be nondecreasing (node " + std::to_string(i) + ")");
      }
    }
    build_pieces();
  }

  double eval(double t) const override {
    const std::size_t m = levels_.size();
    const auto i = static_cast<std::size_t>(
        std::lower_bound(levels_.begin(), levels_.end(), t) - levels_.begin());
    if (i == m) return values_.back();
    if (rule_ == Interpolation::StepLeftContinuous) return values_[i];
    if (levels_[i] == t || i == 0) return values_[i];
    const double a = levels_[i - 1];
    const double b = levels_[i];
    return values_[i - 1] + (values_[i] - values_[i - 1]) * (t - a) / (b - a);
  }

 private:
  void build_pieces() {
    const std::size_t m = levels_.size();
    if (levels_.front() > 0.0) {
      pieces.push_back(Piece{0.0, levels_.front(), values_.front(), values_.front()});
    }
    for (std::size_t i = 1; i < m; ++i) {
      if (levels_[i] <= levels_[i - 1]) continue;
      const double lo = rule_ == Interpolation::Linear ? values_[i - 1] : values_[i];
      pieces.push_back(Piece{levels_[i - 1], levels_[i], lo, values_[i]});
    }
    if (levels_.back() < 1.0) {
      pieces.push_back(Piece{levels_.back(), 1.0, values_.back(), values_.back()});
    }
  }

  std::vector<double> levels_;
  std::vector<double> values_;
  Interpolation rule_;
};

class FloorTruncatedImpl final : public Impl {
 public:
  FloorTruncatedImpl(QuantileFn inner, double delta)
      : Impl(Kind::FloorTruncated), inner_(std::move(inner)), delta_(delta) {
    const double floor_value = inner_(delta_);
    pieces.push_back(Piece{0.0, delta_, floor_value, floor_value});
    for (const Piece& p : inner_.pieces()) append_clipped(pieces, p, delta_, 1.0);
  }

  double eval(double t) const override { return inner_(std::max(t, delta_)); }

 private:
  QuantileFn inner_;
  double delta_;
};

class ContaminatedImpl final : public Impl {
 public:
  ContaminatedImpl(QuantileFn inner, ContaminationSpec c)
      : Impl(Kind::Contaminated), inner_(std::move(inner)), c_(c) {
    const double keep = 1.0 - c_.epsilon;
    const double f_left = inner_.cdf_left(c_.z);
    const double f = inner_.cdf(c_.z);
    low_cut_ = keep * f_left;
    high_cut_ = c_.epsilon + keep * f;
    for (const Piece& p : inner_.pieces()) {
      if (p.t0 >= f_left) break;
      std::vector<Piece> tmp;
      append_clipped(tmp, p, 0.0, f_left);
      for (const Piece& q : tmp) {
        pieces.push_back(Piece{keep * q.t0, keep * q.t1, q.v0, q.v1});
      }
    }
    if (high_cut_ > low_cut_) {
      pieces.push_back(Piece{low_cut_, high_cut_, c_.z, c_.z});
    }
    for (const Piece& p : inner_.pieces()) {
      if (p.t1 <= f) continue;
      std::vector<Piece> tmp;
      append_clipped(tmp, p, f, 1.0);
      for (const Piece& q : tmp) {
        pieces.push_back(Piece{c_.epsilon + keep * q.t0, c_.epsilon + keep * q.t1,
                               q.v0, q.v1});
      }
    }
  }

  double eval(double t) const override {
    const double keep = 1.0 - c_.epsilon;
    if (t <= low_cut_) return inner_(std::min(t / keep, std::nextafter(1.0, 0.0)));
    if (t > high_cut_) {
      return inner_(std::clamp((t - c_.epsilon) / keep,
                               std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));
    }
    return c_.z;
  }

 private:
  QuantileFn inner_;
  ContaminationSpec c_;
  double low_cut_ = 0.0;
  double high_cut_ = 0.0;
};

class CombinationImpl final : public Impl {
 public:
  CombinationImpl(std::vector<QuantileFn> parts, std::vector<double> weights,
                  double shift, bool cap)
      : Impl(Kind::Combination),
        parts_(std::move(parts)),
        weights_(std::move(weights)),
        shift_(shift),
        cap_(cap) {
    if (parts_.empty() || parts_.size() != weights_.size()) {
      fail(ErrorCode::InvalidInput, "combination needs one weight per part");
    }
    for (double w : weights_) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        fail(ErrorCode::InvalidInput, "combination weights must be finite and >= 0");
      }
    }
    if (!std::isfinite(shift_)) fail(ErrorCode::InvalidInput, "non-finite shift");
    build_pieces();
  }

  double eval(double t) const override {
    double v = shift_;
    for (std::size_t i = 0; i < parts_.size(); ++i) v += weights_[i] * parts_[i](t);
    return cap_ ? std::min(v, 0.0) : v;
  }

 private:
  void build_pieces() {
    std::vector<double> cuts{0.0, 1.0};
    for (const auto& part : parts_) {
      for (const Piece& p : part.pieces()) {
        cuts.push_back(p.t0);
        cuts.push_back(p.t1);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t k = 1; k < cuts.size(); ++k) {
      const double a = cuts[k - 1];
      const double b = cuts[k];
      if (!(b > a) || a < 0.0 || b > 1.0) continue;
      const double mid = 0.5 * (a + b);
      double va = shift_;
      double vb = shift_;
      for (std::size_t i = 0; i < parts_.size(); ++i) {
        const Piece& p = piece_containing(parts_[i].pieces(), mid);
        va += weights_[i] * p.at(a);
        vb += weights_[i] * p.at(b);
      }
      vb = std::max(va, vb);
      if (cap_ && va < 0.0 && vb > 0.0) {
        const double cross = a + (b - a) * (-va) / (vb - va);
        pieces.push_back(Piece{a, cross, va, 0.0});
        pieces.push_back(Piece{cross, b, 0.0, 0.0});
      } else if (cap_) {
        pieces.push_back(Piece{a, b, std::min(va, 0.0), std::min(vb, 0.0)});
      } else {
        pieces.push_back(Piece{a, b, va, vb});
      }
    }
  }

  std::vector<QuantileFn> parts_;
  std::vector<double> weights_;
  double shift_;
  bool cap_;
};

}  // namespace

QuantileFn::QuantileFn(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

QuantileFn QuantileFn::from_empirical(EmpiricalDistribution d) {
  return QuantileFn(std::make_shared<EmpiricalImpl>(std::move(d)));
}

QuantileFn QuantileFn::from_samples(std::span<const double> samples) {
  return from_empirical(EmpiricalDistribution(samples));
}

QuantileFn QuantileFn::tabulated(std::vector<double> levels,
                                 std::vector<double> values, Interpolation rule) {
  return QuantileFn(
      std::make_shared<TabulatedImpl>(std::move(levels), std::move(values), rule));
}

QuantileFn QuantileFn::constant(double value) {
  return tabulated({0.0, 1.0}, {value, value}, Interpolation::Linear);
}

QuantileFn QuantileFn::combination(std::vector<QuantileFn> parts,
                                   std::vector<double> weights, double shift,
                                   bool cap_at_zero) {
  return QuantileFn(std::make_shared<CombinationImpl>(
      std::move(parts), std::move(weights), shift, cap_at_zero));
}

QuantileFn QuantileFn::floor_truncated(double delta) const {
  require_level(delta);
  return QuantileFn(std::make_shared<FloorTruncatedImpl>(*this, delta));
}

QuantileFn QuantileFn::contaminated(const ContaminationSpec& c) const {
  if (!(c.epsilon >= 0.0 && c.epsilon < 1.0)) {
    fail(ErrorCode::DomainError,
         "contamination weight must lie in [0,1), got " + std::to_string(c.epsilon));
  }
  if (!std::isfinite(c.z)) fail(ErrorCode::InvalidInput, "non-finite contamination point");
  if (c.epsilon == 0.0) return *this;
  return QuantileFn(std::make_shared<ContaminatedImpl>(*this, c));
}

QuantileFn QuantileFn::loss_part() const { return combination({*this}, {1.0}, 0.0, true); }

QuantileFn QuantileFn::shifted(double c) const {
  return combination({*this}, {1.0}, c, false);
}

QuantileFn QuantileFn::scaled(double lambda) const {
  return combination({*this}, {lambda}, 0.0, false);
}

QuantileFn::Kind QuantileFn::kind() const noexcept { return impl_->kind; }

double QuantileFn::operator()(double z) const {
  require_level(z);
  return impl_->eval(z);
}

std::span<const Piece> QuantileFn::pieces() const noexcept { return impl_->pieces; }

double QuantileFn::cdf(double x) const { return impl_->cdf(x); }
double QuantileFn::cdf_left(double x) const { return impl_->cdf_left(x); }

bool QuantileFn::is_step() const noexcept {
  return std::all_of(impl_->pieces.begin(), impl_->pieces.end(),
                     [](const Piece& p) { return p.constant(); });
}

const EmpiricalDistribution* QuantileFn::empirical() const noexcept {
  return impl_->empirical();
}

double QuantileFn::infimum() const noexcept { return impl_->pieces.front().v0; }
double QuantileFn::supremum() const noexcept { return impl_->pieces.back().v1; }

QuantileFn contaminate_quantile(const QuantileFn& g, const ContaminationSpec& c) {
  return g.contaminated(c);
}

QuantileFn mix_quantiles(double lambda, const QuantileFn& g1, const QuantileFn& g2) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    fail(ErrorCode::DomainError, "mixing weight must lie in [0,1]");
  }
  return QuantileFn::combination({g1, g2}, {lambda, 1.0 - lambda}, 0.0, false);
}

}  // namespace lossrisk
