#include "safegap/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "safegap/errors.hpp"

namespace safegap {

namespace {

void require_positive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConfigError(std::string(field) + " must be a finite positive number");
  }
}

}  // namespace

void KinematicParams::validate() const {
  require_positive(reaction_time, "reaction_time");
  if (reaction_time >= 10.0) {
    throw ConfigError("reaction_time must be below 10 s");
  }
  require_positive(follower_max_accel, "follower_max_accel");
  require_positive(follower_min_brake, "follower_min_brake");
  require_positive(gravity, "gravity");
}

void LeaderBrakeParams::validate() const {
  require_positive(mass, "leader.mass");
  if (brake_force_limit) require_positive(*brake_force_limit, "leader.brake_force_limit");
  require_positive(gravity, "leader.gravity");
}

double leader_brake_decel(double mu, const LeaderBrakeParams& params) {
  if (!(mu > 0.0) || mu > 2.0) {
    throw std::domain_error("friction coefficient must lie in (0, 2], got " +
                            std::to_string(mu));
  }
  const double traction_limited = params.gravity * mu;
  if (!params.brake_force_limit) return traction_limited;
  return std::min(traction_limited, *params.brake_force_limit / params.mass);
}

double follower_stopping_distance(double follower_speed,
                                  const KinematicParams& kin) {
  if (!(kin.follower_min_brake > 0.0)) {
    throw std::domain_error("follower braking deceleration must be positive");
  }
  const double rho = kin.reaction_time;
  const double accel = kin.follower_max_accel;
  const double speed_after_reaction = follower_speed + rho * accel;
  return follower_speed * rho + 0.5 * accel * rho * rho +
         speed_after_reaction * speed_after_reaction /
             (2.0 * kin.follower_min_brake);
}

double unclamped_safe_distance(SpeedPair speeds, const KinematicParams& kin,
                               double leader_decel) {
  if (!(leader_decel > 0.0)) {
    throw std::domain_error("leader braking deceleration must be positive");
  }
  const double leader_braking =
      speeds.leader * speeds.leader / (2.0 * leader_decel);
  return follower_stopping_distance(speeds.follower, kin) - leader_braking;
}

double safe_distance(SpeedPair speeds, const KinematicParams& kin,
                     double leader_decel) {
  return std::max(0.0, unclamped_safe_distance(speeds, kin, leader_decel));
}

}  // namespace safegap
