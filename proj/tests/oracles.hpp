#pragma once

// Reference computations used only by tests. They deliberately avoid the
// library's erfc-based path: probabilities come from direct quadrature of
// the Gaussian density.

#include <cmath>
#include <cstddef>
#include <random>

namespace safegap::oracle {

// Composite Simpson rule of the unnormalized density exp(-z^2/2) over [a, b]
// in standardized units.
inline double gaussian_integral(double a, double b, std::size_t intervals = 20000) {
  if (b <= a) return 0.0;
  if (intervals % 2 == 1) ++intervals;
  const double h = (b - a) / static_cast<double>(intervals);
  auto f = [](double z) { return std::exp(-0.5 * z * z); };
  double sum = f(a) + f(b);
  for (std::size_t i = 1; i < intervals; ++i) {
    sum += f(a + static_cast<double>(i) * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

// P(mu > x) for a normal(mean, sigma) truncated to [lo, hi].
inline double tn_exceedance(double mean, double sigma, double lo, double hi,
                            double x) {
  if (x <= lo) return 1.0;
  if (x >= hi) return 0.0;
  auto z = [&](double v) { return (v - mean) / sigma; };
  return gaussian_integral(z(x), z(hi)) / gaussian_integral(z(lo), z(hi));
}

inline double tn_cdf(double mean, double sigma, double lo, double hi, double x) {
  if (x <= lo) return 0.0;
  if (x >= hi) return 1.0;
  auto z = [&](double v) { return (v - mean) / sigma; };
  return gaussian_integral(z(lo), z(x)) / gaussian_integral(z(lo), z(hi));
}

inline double tn_quantile(double mean, double sigma, double lo, double hi,
                          double u) {
  double a = lo;
  double b = hi;
  for (int i = 0; i < 200 && b - a > 1e-15; ++i) {
    const double m = 0.5 * (a + b);
    if (tn_exceedance(mean, sigma, lo, hi, m) <= u) {
      b = m;
    } else {
      a = m;
    }
  }
  return b;
}

// RSS longitudinal safe distance written out term by term.
inline double rss_distance_terms(double v_f, double v_l, double rho,
                                 double accel, double brake_f, double brake_l) {
  const double reaction = v_f * rho;
  const double acceleration = 0.5 * accel * rho * rho;
  const double v_after = v_f + rho * accel;
  const double follower_braking = v_after * v_after / (2.0 * brake_f);
  const double leader_braking = v_l * v_l / (2.0 * brake_l);
  const double raw = reaction + acceleration + follower_braking - leader_braking;
  return raw > 0.0 ? raw : 0.0;
}

inline std::mt19937_64 seeded_rng(unsigned long long seed = 20241015ULL) {
  return std::mt19937_64(seed);
}

}  // namespace safegap::oracle
