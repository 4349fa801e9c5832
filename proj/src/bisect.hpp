#pragma once

#include <cmath>
#include <optional>

namespace nomavlc::detail {

struct BisectResult {
  double x = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

// Bisection for an increasing residual on [lo, hi]. Stops once `done`
// accepts the residual or the interval can no longer be split. Returns
// nullopt when r(lo) and r(hi) have the same strict sign.
template <class Residual, class Done>
std::optional<BisectResult> bisect_increasing(const Residual& r, double lo,
                                              double hi, int max_iter,
                                              const Done& done) {
  double r_lo = r(lo);
  double r_hi = r(hi);
  if (r_lo > 0.0 || r_hi < 0.0) return std::nullopt;
  if (done(r_lo)) return BisectResult{lo, r_lo, 0};
  if (done(r_hi)) return BisectResult{hi, r_hi, 0};

  BisectResult best{lo, r_lo, 0};
  if (std::abs(r_hi) < std::abs(r_lo)) best = {hi, r_hi, 0};
  for (int it = 1; it <= max_iter; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double r_mid = r(mid);
    if (std::abs(r_mid) < std::abs(best.residual)) best = {mid, r_mid, it};
    if (done(r_mid)) return BisectResult{mid, r_mid, it};
    if (r_mid < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return best;
}

}  // namespace nomavlc::detail
