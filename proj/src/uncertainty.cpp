#include "safegap/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "safegap/errors.hpp"

namespace safegap {

double standard_normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double standard_normal_sf(double z) {
  return 0.5 * std::erfc(z / std::numbers::sqrt2);
}

namespace {

// Probability mass of the standard normal on [a, b], a <= b. Uses the tail
// that keeps both terms small so the difference does not cancel.
double normal_mass(double a, double b) {
  if (a >= 0.0) return standard_normal_sf(a) - standard_normal_sf(b);
  if (b <= 0.0) return standard_normal_cdf(b) - standard_normal_cdf(a);
  return 1.0 - standard_normal_cdf(a) - standard_normal_sf(b);
}

}  // namespace

TruncatedNormal::TruncatedNormal(double mean, double sigma, double lower,
                                 double upper)
    : mean_(mean), sigma_(sigma), lower_(lower), upper_(upper) {
  if (!(std::isfinite(lower) && std::isfinite(upper)) || !(lower < upper)) {
    throw ConfigError("truncated normal needs finite lower < upper");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("truncated normal sigma must be positive");
  }
  if (!(mean >= lower && mean <= upper)) {
    throw ConfigError("truncated normal mean " + std::to_string(mean) +
                      " outside support [" + std::to_string(lower) + ", " +
                      std::to_string(upper) + "]");
  }
  mass_ = normal_mass(standardized(lower), standardized(upper));
}

double TruncatedNormal::cdf(double x) const {
  if (x <= lower_) return 0.0;
  if (x >= upper_) return 1.0;
  const double p = normal_mass(standardized(lower_), standardized(x)) / mass_;
  return std::clamp(p, 0.0, 1.0);
}

double TruncatedNormal::exceedance(double x) const {
  if (x <= lower_) return 1.0;
  if (x >= upper_) return 0.0;
  // Same quantity as 1 - cdf(x), evaluated on the upper side to keep
  // relative accuracy in the far tail.
  const double p = normal_mass(standardized(x), standardized(upper_)) / mass_;
  return std::clamp(p, 0.0, 1.0);
}

double TruncatedNormal::exceedance_quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::domain_error("exceedance probability must lie in [0, 1], got " +
                            std::to_string(u));
  }
  if (u == 0.0) return upper_;
  if (u == 1.0) return lower_;

  // Invariant: exceedance(lo) > u >= exceedance(hi).
  double lo = lower_;
  double hi = upper_;
  while (true) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (exceedance(mid) <= u) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace safegap
