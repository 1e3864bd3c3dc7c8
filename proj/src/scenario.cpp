#include "safegap/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "safegap/errors.hpp"

namespace safegap {

namespace {

// Linear interpolation through (xs, ys) with constant extrapolation.
double interpolate(const std::vector<double>& xs, const std::vector<double>& ys,
                   double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const auto i = static_cast<std::size_t>(it - xs.begin());
  const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return ys[i - 1] + t * (ys[i] - ys[i - 1]);
}

}  // namespace

void ScenarioConfig::validate() const {
  if (anchors.empty()) throw ConfigError("scenario.anchors must not be empty");
  for (const auto& a : anchors) {
    if (!(a.friction >= 0.1 && a.friction <= 1.1)) {
      throw ConfigError("scenario.anchors[" + a.label +
                        "].friction must lie in [0.1, 1.1]");
    }
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
      throw ConfigError("scenario.anchors[" + a.label +
                        "].weight must be positive");
    }
  }
  if (!(mu_lower < mu_upper) || !(mu_lower > 0.0)) {
    throw ConfigError("scenario.mu_bounds must satisfy 0 < lower < upper");
  }
  if (!(friction_grid_step > 0.0)) {
    throw ConfigError("scenario.friction_grid_step must be positive");
  }
  if (!(friction_grid_min <= friction_grid_max) ||
      friction_grid_min < mu_lower || friction_grid_max > mu_upper + 1e-12) {
    throw ConfigError(
        "scenario.friction_grid_range must be ordered and inside mu_bounds");
  }
  if (!(sigma_low.friction < sigma_high.friction) || !(sigma_low.sigma > 0.0) ||
      !(sigma_high.sigma > 0.0)) {
    throw ConfigError(
        "scenario.sigma_endpoints need increasing friction and positive sigma");
  }
  if (velocities_kmh.empty()) {
    throw ConfigError("scenario.velocities_kmh must not be empty");
  }
  for (double v : velocities_kmh) {
    if (!(v >= 0.0 && v <= 130.0)) {
      throw ConfigError("scenario.velocities_kmh entries must lie in [0, 130]");
    }
  }
  if (!(supervision_probability >= 0.0 && supervision_probability <= 1.0)) {
    throw ConfigError("scenario.supervision_probability must lie in [0, 1]");
  }
  safegap::validate(ThresholdPolicy{thresholds});
}

double dispersion(double mu, const ScenarioConfig& config) {
  const auto [x0, s0] = config.sigma_low;
  const auto [x1, s1] = config.sigma_high;
  const double sigma = s0 + (mu - x0) * (s1 - s0) / (x1 - x0);
  return std::clamp(sigma, std::min(s0, s1), std::max(s0, s1));
}

std::vector<double> friction_grid(const ScenarioConfig& config) {
  const double span = config.friction_grid_max - config.friction_grid_min;
  const auto steps =
      static_cast<std::size_t>(std::floor(span / config.friction_grid_step + 1e-9));
  std::vector<double> grid;
  grid.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    // Multiply rather than accumulate so grid values do not drift.
    grid.push_back(config.friction_grid_min +
                   static_cast<double>(k) * config.friction_grid_step);
  }
  return grid;
}

std::vector<WeightedFriction> friction_weights(const ScenarioConfig& config) {
  if (config.anchors.empty()) {
    throw ConfigError("scenario.anchors must not be empty");
  }
  auto anchors = config.anchors;
  std::sort(anchors.begin(), anchors.end(),
            [](const auto& a, const auto& b) { return a.friction < b.friction; });

  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& a : anchors) {
    xs.push_back(a.friction);
    ys.push_back(a.weight);
  }
  if (config.taper_to_upper_bound && xs.back() < config.mu_upper) {
    xs.push_back(config.mu_upper);
    ys.push_back(0.0);
  }

  std::vector<WeightedFriction> out;
  double total = 0.0;
  for (double mu : friction_grid(config)) {
    const double w = interpolate(xs, ys, mu);
    if (w > 0.0) {
      out.push_back({mu, w});
      total += w;
    }
  }
  if (!(total > 0.0)) {
    throw ConfigError("scenario.anchors give zero weight to every grid point");
  }
  for (auto& wf : out) wf.weight /= total;
  return out;
}

std::vector<Situation> build_situations(const ScenarioConfig& config) {
  config.validate();
  const auto frictions = friction_weights(config);
  const double velocity_weight =
      1.0 / static_cast<double>(config.velocities_kmh.size());
  const double p_supervised = config.supervision_probability;

  std::vector<Situation> out;
  out.reserve(frictions.size() * config.velocities_kmh.size() * 2);
  for (const auto& [mu, w_mu] : frictions) {
    const double sigma = dispersion(mu, config);
    for (double v_kmh : config.velocities_kmh) {
      for (bool supervised : {true, false}) {
        const double w_sup = supervised ? p_supervised : 1.0 - p_supervised;
        const double weight = w_mu * velocity_weight * w_sup;
        if (!(weight > 0.0)) continue;
        out.push_back({mu, sigma, v_kmh / 3.6, supervised, weight,
                       config.mu_lower, config.mu_upper});
      }
    }
  }
  return out;
}

}  // namespace safegap
