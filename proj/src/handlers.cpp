#include "safegap/handlers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "safegap/errors.hpp"

namespace safegap {

namespace {

constexpr std::array<std::pair<HandlerKind, std::string_view>, 6> kNames{{
    {HandlerKind::WorstCase, "worst_case"},
    {HandlerKind::StaticDesignTime, "static_design_time"},
    {HandlerKind::Supervisor, "supervisor"},
    {HandlerKind::AdaptiveSupervisor, "adaptive_supervisor"},
    {HandlerKind::MarginSelector, "margin_selector"},
    {HandlerKind::AdaptiveMarginSelector, "adaptive_margin_selector"},
}};

void check_threshold(double u, const char* what) {
  if (!(u > 0.0 && u <= 1.0)) {
    throw ConfigError(std::string(what) + " must lie in (0, 1], got " +
                      std::to_string(u));
  }
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

std::string_view to_string(HandlerKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<HandlerKind> parse_handler_kind(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

bool consumes_point_estimate(HandlerKind kind) {
  return kind == HandlerKind::Supervisor ||
         kind == HandlerKind::AdaptiveSupervisor;
}

bool consumes_distribution(HandlerKind kind) {
  return kind == HandlerKind::MarginSelector ||
         kind == HandlerKind::AdaptiveMarginSelector;
}

bool is_adaptive(HandlerKind kind) {
  return kind == HandlerKind::AdaptiveSupervisor ||
         kind == HandlerKind::AdaptiveMarginSelector;
}

void validate(const ThresholdPolicy& policy) {
  std::visit(overloaded{
                 [](const FixedThreshold& f) {
                   check_threshold(f.u_acceptable, "policy.u_acceptable");
                 },
                 [](const AdaptiveThreshold& a) {
                   if (!a.supervised) {
                     throw ConfigError("policy.supervised threshold missing");
                   }
                   if (!a.unsupervised) {
                     throw ConfigError("policy.unsupervised threshold missing");
                   }
                   check_threshold(*a.supervised, "policy.supervised");
                   check_threshold(*a.unsupervised, "policy.unsupervised");
                 },
             },
             policy);
}

double resolve_threshold(const ThresholdPolicy& policy, bool supervised) {
  return std::visit(
      overloaded{
          [](const FixedThreshold& f) { return f.u_acceptable; },
          [supervised](const AdaptiveThreshold& a) {
            const auto& mapped = supervised ? a.supervised : a.unsupervised;
            if (!mapped) {
              throw ConfigError(supervised
                                    ? "policy.supervised threshold missing"
                                    : "policy.unsupervised threshold missing");
            }
            return *mapped;
          },
      },
      policy);
}

double strictest_threshold(const ThresholdPolicy& policy) {
  return std::min(resolve_threshold(policy, true),
                  resolve_threshold(policy, false));
}

void HandlerConfig::validate() const {
  safegap::validate(policy);
  const bool adaptive_policy = std::holds_alternative<AdaptiveThreshold>(policy);
  if (consumes_point_estimate(kind) || consumes_distribution(kind)) {
    if (is_adaptive(kind) != adaptive_policy) {
      throw ConfigError(std::string("handler ") + std::string(to_string(kind)) +
                        (adaptive_policy ? " cannot use an adaptive threshold"
                                         : " requires an adaptive threshold"));
    }
  }
  if (!(default_value > 0.0) || !std::isfinite(default_value)) {
    throw ConfigError("handler.default_value must be positive");
  }
  if (!(delta_mu >= 0.0) || !std::isfinite(delta_mu)) {
    throw ConfigError("handler.delta_mu must be non-negative");
  }
  if (!(static_value > 0.0) || !std::isfinite(static_value)) {
    throw ConfigError("handler.static_value must be positive");
  }
}

std::string HandlerConfig::display_name() const {
  return label.empty() ? std::string(to_string(kind)) : label;
}

double handle_supervisor(const PointEstimate& estimate, double threshold,
                         double default_value) {
  return estimate.uncertainty <= threshold ? estimate.value : default_value;
}

double handle_margin_selector(const DistributionEstimate& estimate,
                              double threshold) {
  return estimate.distribution.exceedance_quantile(threshold);
}

FrictionEstimate simulate_estimate(HandlerKind kind,
                                   const TruncatedNormal& situation,
                                   double delta_mu) {
  if (consumes_point_estimate(kind)) {
    const double value = std::min(situation.mean() + delta_mu, situation.upper());
    return PointEstimate{value, situation.exceedance(value)};
  }
  return DistributionEstimate{situation};
}

double apply_handler(const HandlerConfig& config,
                     const FrictionEstimate& estimate, bool supervised) {
  switch (config.kind) {
    case HandlerKind::WorstCase:
      return config.default_value;
    case HandlerKind::StaticDesignTime:
      return config.static_value;
    case HandlerKind::Supervisor:
    case HandlerKind::AdaptiveSupervisor: {
      const auto* point = std::get_if<PointEstimate>(&estimate);
      if (point == nullptr) {
        throw ConfigError(config.display_name() +
                          " needs a point estimate, got a distribution");
      }
      return handle_supervisor(*point, resolve_threshold(config.policy, supervised),
                               config.default_value);
    }
    case HandlerKind::MarginSelector:
    case HandlerKind::AdaptiveMarginSelector: {
      const auto* dist = std::get_if<DistributionEstimate>(&estimate);
      if (dist == nullptr) {
        throw ConfigError(config.display_name() +
                          " needs a distribution estimate, got a point");
      }
      return handle_margin_selector(*dist,
                                    resolve_threshold(config.policy, supervised));
    }
  }
  throw ConfigError("unknown handler kind");
}

double handle(const HandlerConfig& config, const TruncatedNormal& situation,
              bool supervised) {
  return apply_handler(config,
                       simulate_estimate(config.kind, situation, config.delta_mu),
                       supervised);
}

}  // namespace safegap
