#pragma once

#include <variant>

namespace safegap {

// Standard normal CDF and survival function via erfc; absolute error is at
// the level of double rounding.
double standard_normal_cdf(double z);
double standard_normal_sf(double z);

// Normal distribution of the situational friction, cut off at the physical
// support [lower, upper]. The untruncated mean must lie inside the support.
class TruncatedNormal {
 public:
  // Throws ConfigError if lower >= upper, sigma <= 0 or mean is outside
  // [lower, upper].
  TruncatedNormal(double mean, double sigma, double lower, double upper);

  double mean() const { return mean_; }
  double sigma() const { return sigma_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }

  double cdf(double x) const;

  // u(x) = P(mu > x) = 1 - cdf(x).
  double exceedance(double x) const;

  // Smallest x in [lower, upper] with exceedance(x) <= u, found by
  // bisection down to adjacent doubles. u = 0 yields upper, u = 1 lower.
  // Throws std::domain_error for u outside [0, 1].
  double exceedance_quantile(double u) const;

 private:
  double standardized(double x) const { return (x - mean_) / sigma_; }

  double mean_;
  double sigma_;
  double lower_;
  double upper_;
  double mass_;  // Phi(z_upper) - Phi(z_lower)
};

inline double tn_cdf(const TruncatedNormal& dist, double x) { return dist.cdf(x); }
inline double exceedance(const TruncatedNormal& dist, double x) {
  return dist.exceedance(x);
}
inline double exceedance_quantile(const TruncatedNormal& dist, double u) {
  return dist.exceedance_quantile(u);
}

// What the simulated data-driven component reports: either a single value
// with the probability that it is too low, or the whole distribution so
// that the consumer can invert u(x) itself.
struct PointEstimate {
  double value;
  double uncertainty;
};

struct DistributionEstimate {
  TruncatedNormal distribution;
};

using FrictionEstimate = std::variant<PointEstimate, DistributionEstimate>;

}  // namespace safegap
