#include "safegap/engine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "safegap/errors.hpp"

namespace safegap {

bool EvaluationResult::any_clamped() const {
  return std::any_of(rows.begin(), rows.end(),
                     [](const SituationRow& r) { return r.clamped; });
}

namespace {

SituationRow evaluate_one(const HandlerConfig& handler, const Situation& s,
                          std::size_t index, const KinematicParams& kin,
                          const LeaderBrakeParams& leader) {
  const double mu_safe = handle(handler, s.distribution(), s.supervised);
  const double raw = unclamped_safe_distance(
      {s.speed, s.speed}, kin, leader_brake_decel(mu_safe, leader));
  return {index, s, mu_safe, std::max(0.0, raw), raw < 0.0};
}

// Runs body(i) for i in [0, n) on up to `workers` threads, in contiguous
// blocks. The first exception thrown by any block is rethrown.
template <class Body>
void parallel_for(std::size_t n, unsigned workers, Body body) {
  const std::size_t threads =
      std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::size_t block = (n + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        const std::size_t end = std::min(n, (t + 1) * block);
        for (std::size_t i = t * block; i < end; ++i) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double expected_worst_case_distance(std::span<const Situation> situations,
                                    const KinematicParams& kin,
                                    double leader_decel) {
  double total = 0.0;
  for (const auto& s : situations) {
    total += s.weight * safe_distance({s.speed, s.speed}, kin, leader_decel);
  }
  return total;
}

}  // namespace

EvaluationResult evaluate(const HandlerConfig& handler,
                          std::span<const Situation> situations,
                          const UseCase& use_case, const KinematicParams& kin,
                          const LeaderBrakeParams& leader,
                          const EngineOptions& options) {
  handler.validate();
  KinematicParams k = kin;
  k.reaction_time = use_case.reaction_time;
  k.validate();
  leader.validate();

  EvaluationResult result;
  result.handler = handler.kind;
  result.handler_label = handler.display_name();
  result.use_case = use_case.label;
  result.delta_mu = handler.delta_mu;
  result.rows.resize(situations.size());

  parallel_for(situations.size(), options.workers, [&](std::size_t i) {
    result.rows[i] = evaluate_one(handler, situations[i], i, k, leader);
  });

  // Fixed order summation keeps results independent of the worker count.
  for (const auto& row : result.rows) {
    result.expected_distance += row.situation.weight * row.distance;
    result.expected_mu += row.situation.weight * row.mu_safe;
  }
  return result;
}

std::vector<double> DeltaMuGrid::points() const {
  if (!(step > 0.0) || !(min >= 0.0) || !(max >= min)) {
    throw ConfigError("delta_mu_grid needs step > 0 and 0 <= min <= max");
  }
  std::vector<double> out;
  const auto n =
      static_cast<std::size_t>(std::floor((max - min) / step + 1e-9));
  for (std::size_t k = 0; k <= n; ++k) {
    out.push_back(min + static_cast<double>(k) * step);
  }
  if (out.empty()) throw ConfigError("delta_mu_grid is empty");
  return out;
}

DeltaMuSearch optimize_delta_mu(const HandlerConfig& handler,
                                const DeltaMuGrid& grid,
                                std::span<const Situation> situations,
                                const UseCase& use_case,
                                const KinematicParams& kin,
                                const LeaderBrakeParams& leader,
                                const EngineOptions& options) {
  if (!consumes_point_estimate(handler.kind)) {
    throw ConfigError("delta_mu is only optimized for supervisor handlers, not " +
                      handler.display_name());
  }
  DeltaMuSearch best{0.0, std::numeric_limits<double>::infinity()};
  for (double delta : grid.points()) {
    HandlerConfig candidate = handler;
    candidate.delta_mu = delta;
    const double d =
        evaluate(candidate, situations, use_case, kin, leader, options)
            .expected_distance;
    if (d < best.expected_distance) best = {delta, d};
  }
  return best;
}

double calibrate_follower_brake(double target,
                                std::span<const Situation> situations,
                                const UseCase& use_case,
                                const KinematicParams& kin,
                                const LeaderBrakeParams& leader,
                                double worst_case_mu) {
  if (!(target > 0.0) || !std::isfinite(target)) {
    throw std::domain_error("calibration target must be a positive distance");
  }
  if (situations.empty()) {
    throw std::domain_error("calibration needs at least one situation");
  }
  KinematicParams k = kin;
  k.reaction_time = use_case.reaction_time;
  const double leader_decel = leader_brake_decel(worst_case_mu, leader);

  // E[d] as a function of the inverse deceleration s = 1/a_min,brake,F is
  // continuous and non-decreasing; s = 0 is unlimited follower braking.
  auto expected_at = [&](double inv_brake) {
    k.follower_min_brake = 1.0 / inv_brake;
    return expected_worst_case_distance(situations, k, leader_decel);
  };
  double floor_distance = 0.0;
  for (const auto& s : situations) {
    const double v = s.speed;
    const double rho = k.reaction_time;
    floor_distance +=
        s.weight * std::max(0.0, v * rho + 0.5 * k.follower_max_accel * rho * rho -
                                     v * v / (2.0 * leader_decel));
  }
  if (target <= floor_distance) {
    throw NumericalError("target distance " + std::to_string(target) +
                         " m is unattainable; even unlimited follower braking "
                         "gives " + std::to_string(floor_distance) + " m");
  }

  double lo = 0.0;
  double hi = 1.0;
  while (expected_at(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw NumericalError("calibration failed to bracket target");
  }
  while (true) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (expected_at(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 1.0 / hi;
}

double design_time_static_value(std::span<const Situation> situations,
                                double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw std::domain_error("threshold must lie in [0, 1]");
  }
  if (situations.empty()) {
    throw std::domain_error("static baseline needs at least one situation");
  }
  std::vector<TruncatedNormal> components;
  components.reserve(situations.size());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& s : situations) {
    components.push_back(s.distribution());
    lo = std::min(lo, s.mu_lower);
    hi = std::max(hi, s.mu_upper);
  }
  auto mixture_exceedance = [&](double x) {
    double u = 0.0;
    for (std::size_t i = 0; i < situations.size(); ++i) {
      u += situations[i].weight * components[i].exceedance(x);
    }
    return u;
  };
  if (mixture_exceedance(lo) <= threshold) return lo;
  while (true) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (mixture_exceedance(mid) <= threshold) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::vector<double> log_space(double lo, double hi, std::size_t n) {
  if (n < 2 || !(lo > 0.0) || !(lo < hi)) {
    throw std::domain_error("log_space needs n >= 2 and 0 < lo < hi");
  }
  std::vector<double> out(n);
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    out[i] = std::pow(10.0, a + t * (b - a));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<SweepPoint> sensitivity_sweep(const SweepSpec& spec,
                                          const KinematicParams& kin,
                                          const LeaderBrakeParams& leader) {
  kin.validate();
  leader.validate();
  for (double u : spec.u_values) {
    if (!(u > 0.0 && u <= 1.0)) {
      throw ConfigError("sweep thresholds must lie in (0, 1]");
    }
  }
  for (double sigma : spec.sigmas) {
    if (!(sigma > 0.0)) throw ConfigError("sweep sigmas must be positive");
  }

  std::vector<SweepPoint> out;
  out.reserve(spec.handlers.size() * spec.means.size() * spec.sigmas.size() *
              spec.u_values.size());
  for (const auto& base : spec.handlers) {
    for (double mu : spec.means) {
      for (double sigma : spec.sigmas) {
        const TruncatedNormal dist(mu, sigma, spec.mu_lower, spec.mu_upper);
        for (double u : spec.u_values) {
          HandlerConfig h = base;
          h.policy = is_adaptive(h.kind) ? ThresholdPolicy{AdaptiveThreshold{u, u}}
                                         : ThresholdPolicy{FixedThreshold{u}};
          h.validate();
          const double mu_safe = handle(h, dist, false);
          const double d = safe_distance({spec.speed, spec.speed}, kin,
                                         leader_brake_decel(mu_safe, leader));
          out.push_back({h.kind, h.display_name(), u, sigma, mu, mu_safe, d});
        }
      }
    }
  }
  return out;
}

}  // namespace safegap
