#include "safegap/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "safegap/errors.hpp"

namespace safegap {

const EvaluationResult& StudyResult::find(std::string_view handler_label,
                                          std::string_view use_case) const {
  for (const auto& r : results) {
    if (r.handler_label == handler_label && r.use_case == use_case) return r;
  }
  throw std::out_of_range("no result for " + std::string(handler_label) + "/" +
                          std::string(use_case));
}

KinematicParams resolved_kinematics(const RunConfig& config) {
  KinematicParams kin = config.kinematics;
  if (config.follower_brake_given) return kin;
  const auto situations = build_situations(config.scenario);
  kin.follower_min_brake = calibrate_follower_brake(
      config.calibration.target_worst_case_distance, situations,
      config.use_case(config.calibration.use_case), kin, config.leader,
      config.scenario.mu_upper);
  return kin;
}

namespace {

HandlerConfig prepared_handler(const HandlerSpec& spec,
                               std::span<const Situation> situations) {
  HandlerConfig h = spec.config;
  if (h.kind == HandlerKind::StaticDesignTime && !spec.fixed_static_value) {
    h.static_value =
        design_time_static_value(situations, strictest_threshold(h.policy));
  }
  return h;
}

}  // namespace

StudyResult run_study(const RunConfig& config) {
  config.validate();
  StudyResult study;
  study.calibrated = !config.follower_brake_given;
  const KinematicParams kin = resolved_kinematics(config);
  study.follower_min_brake = kin.follower_min_brake;

  const auto situations = build_situations(config.scenario);
  const EngineOptions options{config.workers};

  std::vector<HandlerConfig> handlers;
  for (const auto& spec : config.handlers) {
    handlers.push_back(prepared_handler(spec, situations));
  }

  for (const auto& uc : config.use_cases) {
    for (std::size_t i = 0; i < handlers.size(); ++i) {
      HandlerConfig h = handlers[i];
      if (consumes_point_estimate(h.kind) && !config.handlers[i].fixed_delta_mu) {
        h.delta_mu = optimize_delta_mu(h, config.delta_mu_grid, situations, uc,
                                       kin, config.leader, options)
                         .delta_mu;
      }
      study.results.push_back(
          evaluate(h, situations, uc, kin, config.leader, options));
    }
  }
  return study;
}

std::vector<MarginChoice> optimize_margins(const RunConfig& config) {
  config.validate();
  const KinematicParams kin = resolved_kinematics(config);
  const auto situations = build_situations(config.scenario);
  const EngineOptions options{config.workers};
  std::vector<MarginChoice> out;
  for (const auto& uc : config.use_cases) {
    for (const auto& spec : config.handlers) {
      if (!consumes_point_estimate(spec.config.kind)) continue;
      out.push_back({spec.config.display_name(), uc.label,
                     optimize_delta_mu(spec.config, config.delta_mu_grid,
                                       situations, uc, kin, config.leader,
                                       options)});
    }
  }
  return out;
}

std::vector<SweepPoint> run_sweep(const RunConfig& config) {
  config.validate();
  KinematicParams kin = resolved_kinematics(config);
  kin.reaction_time = config.use_case(config.sweep.use_case).reaction_time;

  SweepSpec spec;
  for (HandlerKind kind : config.sweep.handlers) {
    HandlerConfig h;
    h.kind = kind;
    h.default_value = config.scenario.mu_upper;
    h.delta_mu = config.sweep.delta_mu;
    h.static_value = config.scenario.mu_upper;
    spec.handlers.push_back(h);
  }
  spec.u_values = log_space(config.sweep.u_min, config.sweep.u_max, config.sweep.points);
  spec.sigmas = config.sweep.sigmas;
  spec.means = config.sweep.mus;
  spec.speed = kmh_to_mps(config.sweep.speed_kmh);
  spec.mu_lower = config.scenario.mu_lower;
  spec.mu_upper = config.scenario.mu_upper;
  return sensitivity_sweep(spec, kin, config.leader);
}

namespace {

std::string to_chars_checked(double value, std::chars_format fmt, int precision) {
  if (!std::isfinite(value)) {
    throw NumericalError("refusing to format a non-finite number");
  }
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, fmt, precision);
  if (ec != std::errc{}) throw NumericalError("number formatting failed");
  return {buf, end};
}

}  // namespace

std::string format_fixed(double value, int decimals) {
  std::string s = to_chars_checked(value, std::chars_format::fixed, decimals);
  if (s.starts_with('-') &&
      s.find_first_not_of("0.", 1) == std::string::npos) {
    s.erase(0, 1);  // "-0.000"
  }
  return s;
}

std::string format_full(double value) {
  return to_chars_checked(value, std::chars_format::general, 17);
}

std::string table1_csv(std::span<const EvaluationResult> results) {
  std::string out = "handler,use_case,expected_distance_m,expected_mu\n";
  for (const auto& r : results) {
    out += r.handler_label + "," + r.use_case + "," +
           format_full(r.expected_distance) + "," + format_full(r.expected_mu) + "\n";
  }
  return out;
}

std::string sweep_csv(std::span<const SweepPoint> points) {
  std::string out = "handler,mu,sigma,u_acceptable,mu_safe,distance_m\n";
  for (const auto& p : points) {
    out += p.handler_label + "," + format_full(p.mu) + "," + format_full(p.sigma) +
           "," + format_full(p.u_acceptable) + "," + format_full(p.mu_safe) + "," +
           format_full(p.distance) + "\n";
  }
  return out;
}

std::string format_table(const StudyResult& study) {
  std::size_t width = std::string_view("handler").size();
  for (const auto& r : study.results) width = std::max(width, r.handler_label.size());

  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
  };
  auto lpad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.insert(0, w - s.size(), ' ');
    return s;
  };

  std::ostringstream os;
  os << "a_min,brake,F = " << format_fixed(study.follower_min_brake, 4) << " m/s^2"
     << (study.calibrated ? " (calibrated)" : "") << "\n";
  os << pad("handler", width) << "  use_case  " << lpad("E[d_safe] m", 12) << "  "
     << lpad("E[mu_safe]", 10) << "  " << lpad("delta_mu", 8) << "\n";
  for (const auto& r : study.results) {
    os << pad(r.handler_label, width) << "  " << pad(r.use_case, 8) << "  "
       << lpad(format_fixed(r.expected_distance, 3), 12) << "  "
       << lpad(format_fixed(r.expected_mu, 3), 10) << "  "
       << lpad(consumes_point_estimate(r.handler) ? format_fixed(r.delta_mu, 3) : "-", 8)
       << "\n";
  }
  return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw IoError("cannot create directory " + path.parent_path().string() +
                    ": " + ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace safegap
