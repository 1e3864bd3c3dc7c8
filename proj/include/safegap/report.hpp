#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "safegap/config.hpp"
#include "safegap/engine.hpp"

namespace safegap {

// Outcome of the full pattern comparison: rows ordered by use case, then by
// handler declaration order.
struct StudyResult {
  double follower_min_brake = 0.0;
  bool calibrated = false;
  std::vector<EvaluationResult> results;

  const EvaluationResult& find(std::string_view handler_label,
                               std::string_view use_case) const;
};

// Calibrates a_min,brake,F if the configuration does not fix it, derives the
// static design-time value and the supervisor margins, then evaluates every
// (use case, handler) pair.
StudyResult run_study(const RunConfig& config);

// The configuration's kinematics with a_min,brake,F filled in.
KinematicParams resolved_kinematics(const RunConfig& config);

struct MarginChoice {
  std::string handler_label;
  std::string use_case;
  DeltaMuSearch search;
};

// Optimal margin per supervisor handler and use case.
std::vector<MarginChoice> optimize_margins(const RunConfig& config);

std::vector<SweepPoint> run_sweep(const RunConfig& config);

// Locale independent number formatting. Throws NumericalError for NaN/Inf.
std::string format_fixed(double value, int decimals);
std::string format_full(double value);  // 17 significant digits

std::string table1_csv(std::span<const EvaluationResult> results);
std::string sweep_csv(std::span<const SweepPoint> points);
std::string format_table(const StudyResult& study);

// Creates parent directories as needed; throws IoError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace safegap
