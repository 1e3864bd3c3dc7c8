#pragma once

#include <string>
#include <vector>

#include "safegap/handlers.hpp"
#include "safegap/uncertainty.hpp"

namespace safegap {

// A road condition with a representative friction value and its frequency
// in days per year. Only relative weights matter.
struct WeatherAnchor {
  std::string label;
  double friction;
  double weight;
};

struct FrictionPoint {
  double friction;
  double sigma;
};

struct ScenarioConfig {
  std::vector<WeatherAnchor> anchors{
      {"dry asphalt", 0.80, 300.0},
      {"wet asphalt", 0.64, 100.0},
      {"snow / wet leaves", 0.41, 60.0},
      {"glaze / aquaplaning", 0.14, 5.0},
  };
  double friction_grid_step = 0.05;
  double friction_grid_min = 0.10;
  double friction_grid_max = 1.10;
  // The likelihood falls linearly from the highest anchor to zero at
  // mu_upper. When false, the highest anchor's weight is held constant.
  bool taper_to_upper_bound = true;
  FrictionPoint sigma_low{0.14, 0.075};
  FrictionPoint sigma_high{1.10, 0.020};
  double mu_lower = 0.1;
  double mu_upper = 1.1;
  std::vector<double> velocities_kmh{60.0, 65.0, 70.0, 75.0, 80.0};
  double supervision_probability = 0.5;
  AdaptiveThreshold thresholds{1e-5, 1e-6};

  // Throws ConfigError naming the first invalid field.
  void validate() const;
};

// One weighted cell of the situation space. Both vehicles drive at `speed`.
struct Situation {
  double friction_mean;
  double sigma;
  double speed;  // m/s
  bool supervised;
  double weight;
  double mu_lower;
  double mu_upper;

  TruncatedNormal distribution() const {
    return {friction_mean, sigma, mu_lower, mu_upper};
  }
};

struct WeightedFriction {
  double friction;
  double weight;
};

// Situational dispersion: linear in mu between the sigma endpoints and
// clamped to the range they span.
double dispersion(double mu, const ScenarioConfig& config);

// Grid values friction_grid_min + k * step up to friction_grid_max.
std::vector<double> friction_grid(const ScenarioConfig& config);

// Piecewise-linear interpolation of the anchor weights, held constant below
// the lowest anchor. Grid points that end up with zero weight are dropped;
// the rest are normalized to sum to one.
std::vector<WeightedFriction> friction_weights(const ScenarioConfig& config);

// friction grid x velocities x {supervised, unsupervised}, with independent
// weights. Zero-weight cells are omitted.
std::vector<Situation> build_situations(const ScenarioConfig& config);

}  // namespace safegap
