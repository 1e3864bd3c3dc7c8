#pragma once

#include <optional>

namespace safegap {

inline constexpr double kStandardGravity = 9.81;

// Follower-side constants of the RSS longitudinal safe distance.
struct KinematicParams {
  double reaction_time = 0.1;        // rho [s]
  double follower_max_accel = 2.0;   // a_max,acc,F [m/s^2]
  double follower_min_brake = 6.41;  // a_min,brake,F [m/s^2]
  double gravity = kStandardGravity;

  // Throws ConfigError naming the first invalid field.
  void validate() const;
};

// Leader-side constants used to turn a friction coefficient into the
// leader's maximum braking deceleration.
struct LeaderBrakeParams {
  double mass = 40000.0;  // m_L [kg]
  // F_b,brakesystem,limit,L [N]; empty means the brake system never caps
  // the traction-limited deceleration.
  std::optional<double> brake_force_limit;
  double gravity = kStandardGravity;

  void validate() const;
};

struct SpeedPair {
  double follower = 0.0;  // v_F [m/s]
  double leader = 0.0;    // v_L [m/s]
};

// min(g * mu, F_limit / m). Throws std::domain_error unless 0 < mu <= 2.
double leader_brake_decel(double mu, const LeaderBrakeParams& params);

// Distance the follower covers from the leader's brake onset until it
// stands still: reaction travel at full acceleration, then braking at
// a_min,brake,F.
double follower_stopping_distance(double follower_speed,
                                  const KinematicParams& kin);

// Follower stopping distance minus leader braking distance; may be negative.
double unclamped_safe_distance(SpeedPair speeds, const KinematicParams& kin,
                               double leader_decel);

// RSS minimum safe following distance, clamped at zero.
//
//   d = [ vF*rho + a*rho^2/2 + (vF + rho*a)^2 / (2*bF) - vL^2 / (2*bL) ]+
//
// Throws std::domain_error for non-positive leader or follower braking.
double safe_distance(SpeedPair speeds, const KinematicParams& kin,
                     double leader_decel);

inline double kmh_to_mps(double kmh) { return kmh / 3.6; }

}  // namespace safegap
