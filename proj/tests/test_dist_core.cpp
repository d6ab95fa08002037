#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "lossrisk/empirical.hpp"
#include "lossrisk/levy_prokhorov.hpp"
#include "lossrisk/quantile.hpp"
#include "support.hpp"

using namespace lossrisk;
using testing_support::error_code;
using testing_support::Rand;

namespace {
std::vector<double> grid(std::size_t n) {
  std::vector<double> t;
  for (std::size_t i = 1; i < n; ++i) t.push_back(static_cast<double>(i) / static_cast<double>(n));
  return t;
}
}  // namespace

TEST_CASE("build_empirical sorts and keeps ties") {
  const std::vector<double> a{3, -2, 1};
  CHECK(build_empirical(a).samples() == std::vector<double>{-2, 1, 3});
  CHECK(build_empirical(a).size() == 3);
  const std::vector<double> b{5};
  CHECK(build_empirical(b).samples() == std::vector<double>{5});
  const std::vector<double> c{0, 0, 0};
  CHECK(build_empirical(c).samples() == std::vector<double>{0, 0, 0});
}

TEST_CASE("build_empirical rejects empty and non-finite input") {
  const std::vector<double> empty;
  CHECK(error_code([&] { build_empirical(empty); }) == ErrorCode::InvalidInput);
  const std::vector<double> nan{1.0, std::numeric_limits<double>::quiet_NaN()};
  CHECK(error_code([&] { build_empirical(nan); }) == ErrorCode::InvalidInput);
  const std::vector<double> inf{std::numeric_limits<double>::infinity()};
  CHECK(error_code([&] { build_empirical(inf); }) == ErrorCode::InvalidInput);
}

TEST_CASE("empirical CDF is right-continuous with left limits") {
  const std::vector<double> xs{-4, -2, -2, 3};
  const auto d = build_empirical(xs);
  CHECK(d.cdf(-2) == 0.75);
  CHECK(d.cdf_left(-2) == 0.25);
  CHECK(d.cdf(-5) == 0.0);
  CHECK(d.cdf(3) == 1.0);
  CHECK(d.cdf(1e300) == 1.0);
}

TEST_CASE("empirical_quantile uses floor(nz)+1") {
  const std::vector<double> xs{-4, -2, 1, 3};
  const auto d = build_empirical(xs);
  CHECK(empirical_quantile(d, 0.3) == -2);
  CHECK(empirical_quantile(d, 0.1) == -4);
  // Grid points z = k/n take X_(k+1).
  CHECK(empirical_quantile(d, 0.25) == -2);
  CHECK(empirical_quantile(d, 0.5) == 1);
  CHECK(empirical_quantile(d, 0.999) == 3);
  const std::vector<double> one{7};
  for (double z : {0.01, 0.5, 0.99}) CHECK(empirical_quantile(build_empirical(one), z) == 7);
}

TEST_CASE("empirical_quantile rejects levels outside (0,1)") {
  const std::vector<double> xs{1, 2};
  const auto d = build_empirical(xs);
  for (double z : {0.0, 1.0, -0.1, 1.5}) {
    CHECK(error_code([&] { empirical_quantile(d, z); }) == ErrorCode::DomainError);
  }
  const auto g = QuantileFn::from_empirical(d);
  CHECK(error_code([&] { g(0.0); }) == ErrorCode::DomainError);
}

TEST_CASE("QuantileFn wraps the empirical quantile") {
  const std::vector<double> xs{-4, -2, 1, 3};
  const auto g = QuantileFn::from_samples(xs);
  CHECK(g.kind() == QuantileFn::Kind::Empirical);
  CHECK(g(0.3) == -2);
  CHECK(g.is_step());
  CHECK(g.infimum() == -4);
  CHECK(g.supremum() == 3);
  CHECK(g.cdf(1) == 0.75);
}

TEST_CASE("tabulated quantiles") {
  SECTION("step rule is left-continuous") {
    const auto g = QuantileFn::tabulated({0.25, 0.5, 1.0}, {-1, 0, 2});
    CHECK(g(0.1) == -1);
    CHECK(g(0.25) == -1);
    CHECK(g(0.26) == 0);
    CHECK(g(0.5) == 0);
    CHECK(g(0.75) == 2);
    CHECK(g.is_step());
  }
  SECTION("linear rule interpolates between nodes") {
    const auto g = QuantileFn::tabulated({0.0, 1.0}, {-2, 2}, Interpolation::Linear);
    CHECK(g(0.25) == Catch::Approx(-1.0));
    CHECK(g(0.5) == Catch::Approx(0.0).margin(1e-15));
    CHECK_FALSE(g.is_step());
    CHECK(g.cdf(0.0) == Catch::Approx(0.5));
  }
  SECTION("a repeated level encodes a jump") {
    const auto g = QuantileFn::tabulated({0.0, 0.5, 0.5, 1.0}, {0, 1, 3, 4}, Interpolation::Linear);
    CHECK(g(0.25) == Catch::Approx(0.5));
    CHECK(g(0.75) == Catch::Approx(3.5));
    CHECK(g.cdf(2.0) == Catch::Approx(0.5));
  }
  SECTION("invalid tables are rejected") {
    CHECK(error_code([] { QuantileFn::tabulated({0.5, 0.25}, {0, 1}); }) == ErrorCode::InvalidInput);
    CHECK(error_code([] { QuantileFn::tabulated({0.25, 0.5}, {1, 0}); }) == ErrorCode::InvalidInput);
    CHECK(error_code([] { QuantileFn::tabulated({}, {}); }) == ErrorCode::InvalidInput);
  }
}

TEST_CASE("floor truncation evaluates G at z v delta") {
  const std::vector<double> xs{-4, -2, 1, 3};
  const auto g = QuantileFn::from_samples(xs);
  const auto t = g.floor_truncated(0.5);
  CHECK(t.kind() == QuantileFn::Kind::FloorTruncated);
  for (double z : grid(100)) CHECK(t(z) == g(std::max(z, 0.5)));
  for (double d : {0.0, 1.0, -0.5}) {
    CHECK(error_code([&] { g.floor_truncated(d); }) == ErrorCode::DomainError);
  }
}

TEST_CASE("contaminate_quantile examples") {
  SECTION("eps = 0 leaves the quantile unchanged") {
    Rand rng(1);
    const auto g = rng.empirical(3, 9);
    const auto c = contaminate_quantile(g, {-3.0, 0.0});
    for (double t : grid(1000)) CHECK(c(t) == g(t));
  }
  SECTION("point mass at zero contaminated at -1") {
    const auto g = QuantileFn::constant(0.0);
    const auto c = contaminate_quantile(g, {-1.0, 0.5});
    CHECK(c(0.25) == -1);
    CHECK(c(0.5) == -1);
    CHECK(c(0.5000001) == 0);
    CHECK(c(0.9) == 0);
  }
  SECTION("empirical (-2,1) contaminated at -5 with weight 0.2") {
    const std::vector<double> xs{-2, 1};
    const auto c = contaminate_quantile(QuantileFn::from_samples(xs), {-5.0, 0.2});
    CHECK(c(0.05) == -5);
    CHECK(c(0.1) == -5);
    CHECK(c(0.2) == -5);
    CHECK(c(0.3) == -2);
    CHECK(c(0.9) == 1);
  }
  SECTION("weights outside [0,1) are rejected") {
    const auto g = QuantileFn::constant(1.0);
    CHECK(error_code([&] { contaminate_quantile(g, {0.0, 1.0}); }) == ErrorCode::DomainError);
    CHECK(error_code([&] { contaminate_quantile(g, {0.0, -0.1}); }) == ErrorCode::DomainError);
  }
}

TEST_CASE("contaminated CDF equals the mixture CDF at every jump") {
  Rand rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = rng.empirical(1, 10);
    const double z = trial % 5 == 0 ? g(0.5) : rng.uniform(-12, 12);
    const double eps = rng.uniform(0.0, 0.9);
    const auto c = contaminate_quantile(g, {z, eps});
    std::vector<double> jumps = g.empirical()->samples();
    jumps.push_back(z);
    for (double x : jumps) {
      const double expected = (1 - eps) * g.cdf(x) + eps * (x >= z ? 1.0 : 0.0);
      CHECK(c.cdf(x) == Catch::Approx(expected).margin(1e-12));
    }
  }
}

TEST_CASE("every quantile kind is nondecreasing on a fine grid") {
  Rand rng(3);
  const auto lin = QuantileFn::tabulated({0.0, 0.3, 0.3, 1.0}, {-5, -1, 0, 4}, Interpolation::Linear);
  for (int trial = 0; trial < 20; ++trial) {
    const auto e = rng.empirical(1, 15);
    const std::vector<QuantileFn> fs{
        e, lin, e.floor_truncated(rng.uniform(0.01, 0.99)),
        contaminate_quantile(e, {rng.uniform(-20, 20), rng.uniform(0, 0.5)}),
        contaminate_quantile(lin, {rng.uniform(-20, 20), rng.uniform(0, 0.5)}),
        mix_quantiles(rng.uniform(0, 1), e, lin), e.loss_part(), lin.shifted(-2.0).scaled(3.0)};
    for (const auto& f : fs) {
      double prev = -std::numeric_limits<double>::infinity();
      for (double t : grid(1000)) {
        const double v = f(t);
        CHECK(v >= prev);
        prev = v;
      }
    }
  }
}

TEST_CASE("piece decomposition reproduces point evaluation") {
  Rand rng(4);
  const auto e = rng.empirical(5, 10);
  const auto c = contaminate_quantile(e.floor_truncated(0.2), {-30.0, 0.1});
  for (const auto& g : {e, c}) {
    for (const auto& p : g.pieces()) {
      const double mid = 0.5 * (p.t0 + p.t1);
      CHECK(g(mid) == Catch::Approx(p.at(mid)));
    }
  }
}

TEST_CASE("levy_prokhorov examples") {
  const std::vector<double> zero{0.0}, shifted{0.3}, far{5.0};
  CHECK(levy_prokhorov(build_empirical(zero), build_empirical(zero)) == 0.0);
  CHECK(levy_prokhorov(build_empirical(zero), build_empirical(shifted)) ==
        Catch::Approx(0.3).margin(1e-9));
  CHECK(levy_prokhorov(build_empirical(zero), build_empirical(far)) ==
        Catch::Approx(1.0).margin(1e-9));
  CHECK(error_code([&] { levy_prokhorov(build_empirical(zero), build_empirical(zero), 0.0); }) ==
        ErrorCode::InvalidInput);
}

TEST_CASE("levy_prokhorov of a contamination is at most eps") {
  Rand rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    // A sample of 20 with 2 values replaced is the eps = 0.1 mixture.
    auto xs = rng.sample(20);
    auto ys = xs;
    const double z = rng.uniform(-1000, 1000);
    ys[0] = z;
    ys[1] = z;
    const double d = levy_prokhorov(build_empirical(xs), build_empirical(ys));
    CHECK(d <= 0.1 + 1e-9);
  }
}

TEST_CASE("levy_prokhorov is a metric on random triples") {
  Rand rng(6);
  const double tol = 1e-9;
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = build_empirical(rng.sample(rng.index(1, 8), -2, 2));
    const auto b = build_empirical(rng.sample(rng.index(1, 8), -2, 2));
    const auto c = build_empirical(rng.sample(rng.index(1, 8), -2, 2));
    const double ab = levy_prokhorov(a, b, tol), ba = levy_prokhorov(b, a, tol);
    const double bc = levy_prokhorov(b, c, tol), ac = levy_prokhorov(a, c, tol);
    CHECK(std::fabs(ab - ba) <= 2 * tol);
    CHECK(levy_prokhorov(a, a, tol) == 0.0);
    CHECK(ac <= ab + bc + 2 * tol);
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
  }
}

TEST_CASE("levy_prokhorov result is admissible and tight") {
  Rand rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = build_empirical(rng.sample(rng.index(1, 6), -1, 1));
    const auto b = build_empirical(rng.sample(rng.index(1, 6), -1, 1));
    const double d = levy_prokhorov(a, b, 1e-10);
    CHECK(levy_prokhorov_admissible(a, b, d + 1e-10));
    if (d > 1e-9) CHECK_FALSE(levy_prokhorov_admissible(a, b, d - 1e-8));
  }
}
