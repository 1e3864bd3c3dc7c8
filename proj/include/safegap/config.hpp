#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "safegap/engine.hpp"
#include "safegap/handlers.hpp"
#include "safegap/kinematics.hpp"
#include "safegap/scenario.hpp"

namespace safegap {

// A handler entry of the run configuration. Margins and static values that
// are not given explicitly are derived when the study runs.
struct HandlerSpec {
  HandlerConfig config;
  std::optional<double> fixed_delta_mu;
  std::optional<double> fixed_static_value;
};

struct CalibrationSpec {
  double target_worst_case_distance = 14.670;  // m
  std::string use_case = "A";
};

struct SweepConfig {
  double u_min = 1e-8;
  double u_max = 1.0;
  std::size_t points = 33;
  std::vector<double> sigmas{0.02, 0.05, 0.1};
  std::vector<double> mus{0.5, 0.7, 0.9};
  double speed_kmh = 70.0;
  std::string use_case = "A";
  std::vector<HandlerKind> handlers{HandlerKind::WorstCase, HandlerKind::Supervisor,
                                    HandlerKind::MarginSelector};
  double delta_mu = 0.0;  // margin of swept supervisors
};

struct RunConfig {
  ScenarioConfig scenario;
  std::vector<UseCase> use_cases{use_case_a(), use_case_b()};
  // follower_min_brake is only used when follower_brake_given is set;
  // otherwise it is calibrated.
  KinematicParams kinematics;
  bool follower_brake_given = false;
  CalibrationSpec calibration;
  LeaderBrakeParams leader;
  std::vector<HandlerSpec> handlers;
  DeltaMuGrid delta_mu_grid;
  SweepConfig sweep;
  std::filesystem::path output_dir = "out";
  unsigned workers = 1;

  // Throws ConfigError naming the offending field.
  void validate() const;
  const UseCase& use_case(std::string_view label) const;
};

// Worst case, static design time, then the four runtime handlers. Fixed
// thresholds use the strictest adaptive value.
std::vector<HandlerSpec> default_handlers(const ScenarioConfig& scenario);

RunConfig default_run_config();

// Missing keys take their defaults, unknown keys are rejected. Throws
// ConfigError on malformed input.
RunConfig parse_run_config(std::string_view json_text);

// Throws IoError if the file cannot be read.
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace safegap
