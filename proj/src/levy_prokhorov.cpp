#include "lossrisk/levy_prokhorov.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "lossrisk/error.hpp"

namespace lossrisk {
namespace {

// Checks F_a(y) - eps <= F_b(y + eps) at every jump y of F_a, which covers
// F_a(x - eps) - eps <= F_b(x) for all x.
bool one_sided(const EmpiricalDistribution& a, const EmpiricalDistribution& b,
               double eps) {
  const auto& xs = a.samples();
  const double n = static_cast<double>(xs.size());
  std::size_t i = 0;
  while (i < xs.size()) {
    std::size_t j = i;
    while (j + 1 < xs.size() && xs[j + 1] == xs[i]) ++j;
    const double fa = static_cast<double>(j + 1) / n;
    if (fa - eps > b.cdf(xs[i] + eps)) return false;
    i = j + 1;
  }
  return true;
}

}  // namespace

bool levy_prokhorov_admissible(const EmpiricalDistribution& f1,
                               const EmpiricalDistribution& f2, double eps) {
  return one_sided(f1, f2, eps) && one_sided(f2, f1, eps);
}

double levy_prokhorov(const EmpiricalDistribution& f1,
                      const EmpiricalDistribution& f2, double tol) {
  if (!(tol > 0.0)) fail(ErrorCode::InvalidInput, "tolerance must be positive");
  if (levy_prokhorov_admissible(f1, f2, 0.0)) return 0.0;
  // eps = 1 always satisfies both inequalities.
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (levy_prokhorov_admissible(f1, f2, mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace lossrisk
