#include "safegap/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "safegap/errors.hpp"

namespace safegap {

using nlohmann::json;

namespace {

// Walks one JSON object, remembering which keys were consumed so that
// leftovers (usually typos) can be reported with their full path.
class ObjectReader {
 public:
  ObjectReader(const json& node, std::string path)
      : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_ + " must be an object");
  }

  bool has(const std::string& key) {
    used_.insert(key);
    return node_.contains(key) && !node_.at(key).is_null();
  }

  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json& at(const std::string& key) {
    used_.insert(key);
    return node_.at(key);
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    return as_number(at(key), field(key));
  }

  std::optional<double> optional_number(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return as_number(at(key), field(key));
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const auto& v = at(key);
    if (!v.is_boolean()) throw ConfigError(field(key) + " must be true or false");
    return v.get<bool>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const auto& v = at(key);
    if (!v.is_string()) throw ConfigError(field(key) + " must be a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key,
                              const std::vector<double>& fallback) {
    if (!has(key)) return fallback;
    const auto& v = at(key);
    if (!v.is_array()) throw ConfigError(field(key) + " must be an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(as_number(v[i], field(key) + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

  // Call once every key has been read.
  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (!used_.contains(key)) throw ConfigError("unknown field " + field(key));
    }
  }

  static double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError(where + " must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(where + " must be finite");
    return d;
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> used_;
};

std::pair<double, double> number_pair(ObjectReader& r, const std::string& key,
                                      std::pair<double, double> fallback) {
  if (!r.has(key)) return fallback;
  const auto& v = r.at(key);
  if (!v.is_array() || v.size() != 2) {
    throw ConfigError(r.field(key) + " must be a two-element array");
  }
  return {ObjectReader::as_number(v[0], r.field(key) + "[0]"),
          ObjectReader::as_number(v[1], r.field(key) + "[1]")};
}

AdaptiveThreshold read_adaptive(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  AdaptiveThreshold t;
  t.supervised = r.optional_number("supervised");
  t.unsupervised = r.optional_number("unsupervised");
  r.finish();
  return t;
}

ScenarioConfig read_scenario(const json& node) {
  ScenarioConfig s;
  ObjectReader r(node, "scenario");
  if (r.has("anchors")) {
    const auto& arr = r.at("anchors");
    if (!arr.is_array()) throw ConfigError("scenario.anchors must be an array");
    s.anchors.clear();
    for (std::size_t i = 0; i < arr.size(); ++i) {
      ObjectReader a(arr[i], "scenario.anchors[" + std::to_string(i) + "]");
      WeatherAnchor anchor;
      anchor.label = a.text("label", "anchor " + std::to_string(i));
      if (!a.has("friction")) throw ConfigError(a.field("friction") + " is required");
      anchor.friction = a.number("friction", 0.0);
      if (!a.has("weight")) throw ConfigError(a.field("weight") + " is required");
      anchor.weight = a.number("weight", 0.0);
      a.finish();
      s.anchors.push_back(anchor);
    }
  }
  s.friction_grid_step = r.number("friction_grid_step", s.friction_grid_step);
  std::tie(s.friction_grid_min, s.friction_grid_max) = number_pair(
      r, "friction_grid_range", {s.friction_grid_min, s.friction_grid_max});
  s.taper_to_upper_bound = r.boolean("taper_to_upper_bound", s.taper_to_upper_bound);
  if (r.has("sigma_endpoints")) {
    const auto& arr = r.at("sigma_endpoints");
    if (!arr.is_array() || arr.size() != 2 || !arr[0].is_array() ||
        arr[0].size() != 2 || !arr[1].is_array() || arr[1].size() != 2) {
      throw ConfigError(
          "scenario.sigma_endpoints must be [[friction, sigma], [friction, sigma]]");
    }
    s.sigma_low = {ObjectReader::as_number(arr[0][0], "scenario.sigma_endpoints[0][0]"),
                   ObjectReader::as_number(arr[0][1], "scenario.sigma_endpoints[0][1]")};
    s.sigma_high = {ObjectReader::as_number(arr[1][0], "scenario.sigma_endpoints[1][0]"),
                    ObjectReader::as_number(arr[1][1], "scenario.sigma_endpoints[1][1]")};
  }
  std::tie(s.mu_lower, s.mu_upper) =
      number_pair(r, "mu_bounds", {s.mu_lower, s.mu_upper});
  s.velocities_kmh = r.numbers("velocities_kmh", s.velocities_kmh);
  s.supervision_probability =
      r.number("supervision_probability", s.supervision_probability);
  if (r.has("thresholds")) {
    s.thresholds = read_adaptive(r.at("thresholds"), "scenario.thresholds");
  }
  r.finish();
  return s;
}

HandlerSpec read_handler(const json& node, const std::string& path,
                         const ScenarioConfig& scenario) {
  ObjectReader r(node, path);
  if (!r.has("kind")) throw ConfigError(r.field("kind") + " is required");
  const std::string kind_name = r.text("kind", "");
  const auto kind = parse_handler_kind(kind_name);
  if (!kind) throw ConfigError(r.field("kind") + ": unknown handler '" + kind_name + "'");

  HandlerSpec spec;
  spec.config.kind = *kind;
  spec.config.label = r.text("label", "");
  spec.config.default_value = r.number("default_value", scenario.mu_upper);
  if (r.has("threshold")) {
    const auto& t = r.at("threshold");
    if (t.is_object()) {
      spec.config.policy = read_adaptive(t, r.field("threshold"));
    } else {
      spec.config.policy =
          FixedThreshold{ObjectReader::as_number(t, r.field("threshold"))};
    }
  } else if (is_adaptive(*kind)) {
    spec.config.policy = scenario.thresholds;
  } else {
    spec.config.policy =
        FixedThreshold{strictest_threshold(ThresholdPolicy{scenario.thresholds})};
  }
  spec.fixed_delta_mu = r.optional_number("delta_mu");
  spec.fixed_static_value = r.optional_number("static_value");
  if (spec.fixed_delta_mu) spec.config.delta_mu = *spec.fixed_delta_mu;
  if (spec.fixed_static_value) spec.config.static_value = *spec.fixed_static_value;
  r.finish();
  try {
    spec.config.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return spec;
}

}  // namespace

std::vector<HandlerSpec> default_handlers(const ScenarioConfig& scenario) {
  const double strict = strictest_threshold(ThresholdPolicy{scenario.thresholds});
  auto make = [&](HandlerKind kind) {
    HandlerSpec spec;
    spec.config.kind = kind;
    spec.config.default_value = scenario.mu_upper;
    spec.config.policy = is_adaptive(kind) ? ThresholdPolicy{scenario.thresholds}
                                           : ThresholdPolicy{FixedThreshold{strict}};
    return spec;
  };
  return {make(HandlerKind::WorstCase),       make(HandlerKind::StaticDesignTime),
          make(HandlerKind::Supervisor),      make(HandlerKind::AdaptiveSupervisor),
          make(HandlerKind::MarginSelector),  make(HandlerKind::AdaptiveMarginSelector)};
}

RunConfig default_run_config() {
  RunConfig config;
  config.handlers = default_handlers(config.scenario);
  return config;
}

const UseCase& RunConfig::use_case(std::string_view label) const {
  for (const auto& uc : use_cases) {
    if (uc.label == label) return uc;
  }
  throw ConfigError("unknown use case '" + std::string(label) + "'");
}

void RunConfig::validate() const {
  scenario.validate();
  if (use_cases.empty()) throw ConfigError("use_cases must not be empty");
  std::set<std::string> labels;
  for (const auto& uc : use_cases) {
    if (!(uc.reaction_time > 0.0) || uc.reaction_time >= 10.0) {
      throw ConfigError("use_cases[" + uc.label +
                        "].reaction_time must lie in (0, 10) s");
    }
    if (!labels.insert(uc.label).second) {
      throw ConfigError("use_cases: duplicate label '" + uc.label + "'");
    }
  }
  if (handlers.empty()) throw ConfigError("handlers must not be empty");
  for (const auto& h : handlers) h.config.validate();

  KinematicParams k = kinematics;
  if (!follower_brake_given) k.follower_min_brake = 1.0;
  k.reaction_time = use_cases.front().reaction_time;
  k.validate();
  leader.validate();
  if (!follower_brake_given) {
    if (!(calibration.target_worst_case_distance > 0.0)) {
      throw ConfigError("calibration.target_worst_case_distance must be positive");
    }
    (void)use_case(calibration.use_case);
  }
  (void)delta_mu_grid.points();

  if (!(sweep.u_min > 0.0) || !(sweep.u_min < sweep.u_max) || sweep.u_max > 1.0) {
    throw ConfigError("sweep range must satisfy 0 < u_min < u_max <= 1");
  }
  if (sweep.points < 2) throw ConfigError("sweep.points must be at least 2");
  for (double s : sweep.sigmas) {
    if (!(s > 0.0)) throw ConfigError("sweep.sigmas entries must be positive");
  }
  for (double m : sweep.mus) {
    if (!(m >= scenario.mu_lower && m <= scenario.mu_upper)) {
      throw ConfigError("sweep.mus entries must lie inside scenario.mu_bounds");
    }
  }
  if (!(sweep.speed_kmh >= 0.0 && sweep.speed_kmh <= 130.0)) {
    throw ConfigError("sweep.speed_kmh must lie in [0, 130]");
  }
  if (!(sweep.delta_mu >= 0.0)) throw ConfigError("sweep.delta_mu must be non-negative");
  (void)use_case(sweep.use_case);
  if (workers == 0) throw ConfigError("workers must be at least 1");
}

RunConfig parse_run_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("configuration is not valid JSON: ") + e.what());
  }

  RunConfig config;
  ObjectReader r(root, "");
  if (r.has("scenario")) config.scenario = read_scenario(r.at("scenario"));

  if (r.has("use_cases")) {
    const auto& arr = r.at("use_cases");
    if (!arr.is_array()) throw ConfigError("use_cases must be an array");
    config.use_cases.clear();
    for (std::size_t i = 0; i < arr.size(); ++i) {
      ObjectReader u(arr[i], "use_cases[" + std::to_string(i) + "]");
      UseCase uc;
      uc.label = u.text("label", "");
      if (uc.label.empty()) throw ConfigError(u.field("label") + " is required");
      if (!u.has("reaction_time")) {
        throw ConfigError(u.field("reaction_time") + " is required");
      }
      uc.reaction_time = u.number("reaction_time", 0.0);
      u.finish();
      config.use_cases.push_back(uc);
    }
  }

  if (r.has("kinematics")) {
    ObjectReader k(r.at("kinematics"), "kinematics");
    config.kinematics.follower_max_accel =
        k.number("follower_max_accel", config.kinematics.follower_max_accel);
    config.kinematics.gravity = k.number("gravity", config.kinematics.gravity);
    if (const auto brake = k.optional_number("follower_min_brake")) {
      config.kinematics.follower_min_brake = *brake;
      config.follower_brake_given = true;
    }
    k.finish();
  }
  config.leader.gravity = config.kinematics.gravity;

  if (r.has("calibration")) {
    ObjectReader c(r.at("calibration"), "calibration");
    config.calibration.target_worst_case_distance = c.number(
        "target_worst_case_distance", config.calibration.target_worst_case_distance);
    config.calibration.use_case = c.text("use_case", config.calibration.use_case);
    c.finish();
  }

  if (r.has("leader")) {
    ObjectReader l(r.at("leader"), "leader");
    config.leader.mass = l.number("mass", config.leader.mass);
    config.leader.brake_force_limit = l.optional_number("brake_force_limit");
    l.finish();
  }

  if (r.has("handlers")) {
    const auto& arr = r.at("handlers");
    if (!arr.is_array()) throw ConfigError("handlers must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      config.handlers.push_back(
          read_handler(arr[i], "handlers[" + std::to_string(i) + "]", config.scenario));
    }
  } else {
    config.handlers = default_handlers(config.scenario);
  }

  if (r.has("delta_mu_grid")) {
    ObjectReader g(r.at("delta_mu_grid"), "delta_mu_grid");
    config.delta_mu_grid.min = g.number("min", config.delta_mu_grid.min);
    config.delta_mu_grid.max = g.number("max", config.delta_mu_grid.max);
    config.delta_mu_grid.step = g.number("step", config.delta_mu_grid.step);
    g.finish();
  }

  if (r.has("sweep")) {
    ObjectReader s(r.at("sweep"), "sweep");
    auto& sw = config.sweep;
    sw.u_min = s.number("u_min", sw.u_min);
    sw.u_max = s.number("u_max", sw.u_max);
    const double points = s.number("points", static_cast<double>(sw.points));
    if (points < 0.0 || points != std::floor(points)) {
      throw ConfigError("sweep.points must be a non-negative integer");
    }
    sw.points = static_cast<std::size_t>(points);
    sw.sigmas = s.numbers("sigmas", sw.sigmas);
    sw.mus = s.numbers("mus", sw.mus);
    sw.speed_kmh = s.number("speed_kmh", sw.speed_kmh);
    sw.use_case = s.text("use_case", sw.use_case);
    sw.delta_mu = s.number("delta_mu", sw.delta_mu);
    if (s.has("handlers")) {
      const auto& arr = s.at("handlers");
      if (!arr.is_array()) throw ConfigError("sweep.handlers must be an array");
      sw.handlers.clear();
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string where = "sweep.handlers[" + std::to_string(i) + "]";
        if (!arr[i].is_string()) throw ConfigError(where + " must be a string");
        const auto kind = parse_handler_kind(arr[i].get<std::string>());
        if (!kind) throw ConfigError(where + ": unknown handler");
        sw.handlers.push_back(*kind);
      }
    }
    s.finish();
  }

  if (r.has("output_dir")) config.output_dir = r.text("output_dir", "out");
  if (r.has("workers")) {
    const double w = r.number("workers", 1.0);
    if (w < 1.0 || w != std::floor(w)) {
      throw ConfigError("workers must be a positive integer");
    }
    config.workers = static_cast<unsigned>(w);
  }
  r.finish();

  config.validate();
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read configuration file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str());
}

}  // namespace safegap
