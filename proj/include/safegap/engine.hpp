#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "safegap/handlers.hpp"
#include "safegap/kinematics.hpp"
#include "safegap/scenario.hpp"

namespace safegap {

struct UseCase {
  std::string label;
  double reaction_time;  // rho [s]
};

inline UseCase use_case_a() { return {"A", 0.1}; }
inline UseCase use_case_b() { return {"B", 0.8}; }

struct SituationRow {
  std::size_t index;  // position in the evaluated situation list
  Situation situation;
  double mu_safe;
  double distance;
  bool clamped;  // the bracketed expression was negative
};

struct EvaluationResult {
  HandlerKind handler;
  std::string handler_label;
  std::string use_case;
  double delta_mu = 0.0;
  double expected_distance = 0.0;  // E[d_safe] [m]
  double expected_mu = 0.0;        // E[mu_safe]
  std::vector<SituationRow> rows;

  // The B - A use-case gap is handler independent only when this is false.
  bool any_clamped() const;
};

// Situations are split into contiguous blocks across `workers` threads.
// Expectations are always summed in situation order, so the result does not
// depend on the worker count.
struct EngineOptions {
  unsigned workers = 1;
};

// Exact expectation of mu_safe and d_safe over a weighted situation list.
// The reaction time of `kin` is replaced by the use case's.
EvaluationResult evaluate(const HandlerConfig& handler,
                          std::span<const Situation> situations,
                          const UseCase& use_case, const KinematicParams& kin,
                          const LeaderBrakeParams& leader,
                          const EngineOptions& options = {});

struct DeltaMuGrid {
  double min = 0.0;
  double max = 0.6;
  double step = 0.005;

  // min + k * step for k = 0.. while <= max. Throws ConfigError when empty.
  std::vector<double> points() const;
};

struct DeltaMuSearch {
  double delta_mu;
  double expected_distance;
};

// Grid search for the margin that minimizes the expected safe distance of a
// supervisor handler. Ties go to the smallest margin.
DeltaMuSearch optimize_delta_mu(const HandlerConfig& handler,
                                const DeltaMuGrid& grid,
                                std::span<const Situation> situations,
                                const UseCase& use_case,
                                const KinematicParams& kin,
                                const LeaderBrakeParams& leader,
                                const EngineOptions& options = {});

// Follower braking deceleration a_min,brake,F for which the worst-case
// handler (constant mu = worst_case_mu) yields `target` expected distance.
// Throws std::domain_error for a non-positive target and NumericalError if
// the target lies at or below the distance reached with unlimited follower
// braking.
double calibrate_follower_brake(double target,
                                std::span<const Situation> situations,
                                const UseCase& use_case,
                                const KinematicParams& kin,
                                const LeaderBrakeParams& leader,
                                double worst_case_mu = 1.1);

// Design-time friction for the static baseline: the exceedance quantile of
// the friction mixture over all situations (weights marginalized over speed
// and supervision) at the given threshold.
double design_time_static_value(std::span<const Situation> situations,
                                double threshold);

struct SweepSpec {
  std::vector<HandlerConfig> handlers;
  std::vector<double> u_values;
  std::vector<double> sigmas;
  std::vector<double> means;
  double speed = 70.0 / 3.6;  // m/s, both vehicles
  double mu_lower = 0.1;
  double mu_upper = 1.1;
};

struct SweepPoint {
  HandlerKind handler;
  std::string handler_label;
  double u_acceptable;
  double sigma;
  double mu;
  double mu_safe;
  double distance;
};

// For each (handler, mu, sigma, u) in that nesting order: situation
// TN(mu, sigma, lower, upper), the handler's threshold replaced by u, and
// the resulting safe distance at the fixed speed. Unsupervised context.
std::vector<SweepPoint> sensitivity_sweep(const SweepSpec& spec,
                                          const KinematicParams& kin,
                                          const LeaderBrakeParams& leader);

// n log-spaced values from lo to hi inclusive; n >= 2, 0 < lo < hi.
std::vector<double> log_space(double lo, double hi, std::size_t n);

}  // namespace safegap
