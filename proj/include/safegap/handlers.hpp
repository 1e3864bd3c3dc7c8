#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "safegap/uncertainty.hpp"

namespace safegap {

// The four runtime uncertainty handlers plus two static baselines.
enum class HandlerKind {
  WorstCase,
  StaticDesignTime,
  Supervisor,
  AdaptiveSupervisor,
  MarginSelector,
  AdaptiveMarginSelector,
};

std::string_view to_string(HandlerKind kind);
std::optional<HandlerKind> parse_handler_kind(std::string_view name);

// Supervisor kinds consume point estimates, selector kinds distributions.
bool consumes_point_estimate(HandlerKind kind);
bool consumes_distribution(HandlerKind kind);
bool is_adaptive(HandlerKind kind);

struct FixedThreshold {
  double u_acceptable;
};

// Threshold keyed by the supervision context: is a human supervising the
// distance controller right now?
struct AdaptiveThreshold {
  std::optional<double> supervised;
  std::optional<double> unsupervised;
};

using ThresholdPolicy = std::variant<FixedThreshold, AdaptiveThreshold>;

// Throws ConfigError if a threshold is outside (0, 1] or the adaptive map
// is missing a context.
void validate(const ThresholdPolicy& policy);

double resolve_threshold(const ThresholdPolicy& policy, bool supervised);

// Smallest threshold the policy can resolve to.
double strictest_threshold(const ThresholdPolicy& policy);

struct HandlerConfig {
  HandlerKind kind = HandlerKind::WorstCase;
  ThresholdPolicy policy = FixedThreshold{1e-6};
  double default_value = 1.1;  // mu_max, used when a supervisor rejects
  double delta_mu = 0.0;       // margin added to the prediction (supervisors)
  double static_value = 1.1;   // design-time friction (StaticDesignTime)
  std::string label;           // empty: use to_string(kind)

  // Checks kind/policy consistency and value ranges; throws ConfigError.
  void validate() const;
  std::string display_name() const;
};

// Pass the estimate through when its uncertainty is acceptable (u <= t),
// otherwise substitute the default.
double handle_supervisor(const PointEstimate& estimate, double threshold,
                         double default_value);

// Least conservative value whose exceedance is within the threshold.
double handle_margin_selector(const DistributionEstimate& estimate,
                              double threshold);

// Simulated data-driven component for one situation. Point estimates report
// min(mean + delta_mu, upper) with u = exceedance at that value; the
// prediction itself equals the situational mean.
FrictionEstimate simulate_estimate(HandlerKind kind,
                                   const TruncatedNormal& situation,
                                   double delta_mu);

// Applies a handler to an already produced estimate. Throws ConfigError when
// the estimate type does not match what the handler consumes.
double apply_handler(const HandlerConfig& config,
                     const FrictionEstimate& estimate, bool supervised);

// Assumed friction mu_safe for one situation.
double handle(const HandlerConfig& config, const TruncatedNormal& situation,
              bool supervised);

}  // namespace safegap
