#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "safegap/errors.hpp"
#include "safegap/handlers.hpp"
#include "safegap/scenario.hpp"

using namespace safegap;

namespace {

const AdaptiveThreshold kStudyThresholds{1e-5, 1e-6};

HandlerConfig make(HandlerKind kind, double delta_mu = 0.0) {
  HandlerConfig h;
  h.kind = kind;
  h.delta_mu = delta_mu;
  h.policy = is_adaptive(kind) ? ThresholdPolicy{kStudyThresholds}
                               : ThresholdPolicy{FixedThreshold{1e-6}};
  return h;
}

}  // namespace

TEST_CASE("resolve_threshold") {
  CHECK(resolve_threshold(FixedThreshold{1e-6}, true) == 1e-6);
  CHECK(resolve_threshold(FixedThreshold{1e-6}, false) == 1e-6);
  CHECK(resolve_threshold(kStudyThresholds, true) == 1e-5);
  CHECK(resolve_threshold(kStudyThresholds, false) == 1e-6);
  CHECK(strictest_threshold(kStudyThresholds) == 1e-6);

  const AdaptiveThreshold partial{1e-5, std::nullopt};
  CHECK_THROWS_AS(resolve_threshold(partial, false), ConfigError);
  CHECK_THROWS_AS(validate(ThresholdPolicy{partial}), ConfigError);
  CHECK_THROWS_AS(validate(ThresholdPolicy{FixedThreshold{0.0}}), ConfigError);
  CHECK_THROWS_AS(validate(ThresholdPolicy{FixedThreshold{1.5}}), ConfigError);
}

TEST_CASE("handle_supervisor") {
  CHECK(handle_supervisor({0.85, 2e-7}, 1e-6, 1.1) == 0.85);
  CHECK(handle_supervisor({0.85, 2e-5}, 1e-6, 1.1) == 1.1);
  CHECK(handle_supervisor({0.85, 1e-6}, 1e-6, 1.1) == 0.85);
}

TEST_CASE("handle_margin_selector") {
  const TruncatedNormal dry(0.8, 0.02, 0.1, 1.1);
  const double q = handle_margin_selector({dry}, 1e-6);
  CHECK(std::abs(q - oracle::tn_quantile(0.8, 0.02, 0.1, 1.1, 1e-6)) <= 1e-9);
  CHECK(handle_margin_selector({dry}, 1.0) == 0.1);

  const TruncatedNormal wide(0.9, 0.1, 0.1, 1.1);
  CHECK(std::abs(handle_margin_selector({wide}, 1e-6) - 1.1) <= 1e-3);
}

TEST_CASE("handle dispatches per kind") {
  const TruncatedNormal dry(0.8, 0.02, 0.1, 1.1);
  CHECK(handle(make(HandlerKind::WorstCase), dry, true) == 1.1);

  HandlerConfig stat = make(HandlerKind::StaticDesignTime);
  stat.static_value = 1.06;
  CHECK(handle(stat, dry, false) == 1.06);

  // exceedance(1.0) is a 10-sigma tail: pass-through of 0.8 + 0.2.
  CHECK(oracle::tn_exceedance(0.8, 0.02, 0.1, 1.1, 1.0) < 1e-20);
  CHECK(handle(make(HandlerKind::Supervisor, 0.2), dry, false) ==
        doctest::Approx(1.0).epsilon(1e-15));

  // exceedance(0.85) ~ 0.0062 rejects.
  CHECK(oracle::tn_exceedance(0.8, 0.02, 0.1, 1.1, 0.85) ==
        doctest::Approx(0.0062).epsilon(0.01));
  CHECK(handle(make(HandlerKind::Supervisor, 0.05), dry, false) == 1.1);

  // The adaptive supervisor relaxes in the supervised context.
  const double q5 = dry.exceedance_quantile(1e-5);
  const double delta = q5 - 0.8 + 1e-4;  // between the 1e-5 and 1e-6 quantiles
  REQUIRE(dry.exceedance(0.8 + delta) > 1e-6);
  CHECK(handle(make(HandlerKind::AdaptiveSupervisor, delta), dry, true) ==
        doctest::Approx(0.8 + delta));
  CHECK(handle(make(HandlerKind::AdaptiveSupervisor, delta), dry, false) == 1.1);

  CHECK(handle(make(HandlerKind::AdaptiveMarginSelector), dry, true) ==
        doctest::Approx(q5).epsilon(1e-12));
}

TEST_CASE("supervisor point estimate never exceeds the support") {
  const TruncatedNormal d(1.0, 0.03, 0.1, 1.1);
  CHECK(handle(make(HandlerKind::Supervisor, 0.3), d, false) == 1.1);
  const auto est = simulate_estimate(HandlerKind::Supervisor, d, 0.3);
  CHECK(std::get<PointEstimate>(est).value == 1.1);
  CHECK(std::get<PointEstimate>(est).uncertainty == 0.0);
}

TEST_CASE("estimate type mismatch is a configuration error") {
  const TruncatedNormal d(0.8, 0.02, 0.1, 1.1);
  CHECK_THROWS_AS(apply_handler(make(HandlerKind::Supervisor),
                                DistributionEstimate{d}, false),
                  ConfigError);
  CHECK_THROWS_AS(apply_handler(make(HandlerKind::MarginSelector),
                                PointEstimate{0.8, 0.5}, false),
                  ConfigError);
}

TEST_CASE("kind and policy must agree") {
  HandlerConfig h = make(HandlerKind::AdaptiveSupervisor);
  h.policy = FixedThreshold{1e-6};
  CHECK_THROWS_AS(h.validate(), ConfigError);
  h = make(HandlerKind::MarginSelector);
  h.policy = kStudyThresholds;
  CHECK_THROWS_AS(h.validate(), ConfigError);
  h = make(HandlerKind::Supervisor);
  h.delta_mu = -0.1;
  CHECK_THROWS_AS(h.validate(), ConfigError);
}

TEST_CASE("handler names round trip") {
  for (auto k : {HandlerKind::WorstCase, HandlerKind::StaticDesignTime,
                 HandlerKind::Supervisor, HandlerKind::AdaptiveSupervisor,
                 HandlerKind::MarginSelector, HandlerKind::AdaptiveMarginSelector}) {
    CHECK(parse_handler_kind(to_string(k)) == k);
  }
  CHECK_FALSE(parse_handler_kind("oracle").has_value());
}

TEST_CASE("property: selector dominates supervisor and meets the threshold") {
  auto rng = oracle::seeded_rng(11);
  std::uniform_real_distribution<double> mean(0.1, 1.1);
  std::uniform_real_distribution<double> sigma(0.02, 0.075);
  std::uniform_real_distribution<double> delta(0.0, 0.6);
  for (int i = 0; i < 300; ++i) {
    const TruncatedNormal d(mean(rng), sigma(rng), 0.1, 1.1);
    const double dm = delta(rng);
    for (bool supervised : {true, false}) {
      const double t = supervised ? 1e-5 : 1e-6;
      const double sel = handle(make(HandlerKind::AdaptiveMarginSelector), d, supervised);
      const double sup = handle(make(HandlerKind::AdaptiveSupervisor, dm), d, supervised);
      CHECK(sel <= sup);
      CHECK(d.exceedance(sel) <= t);
      CHECK(d.exceedance(sup) <= t);
      CHECK(sel >= d.lower());
      CHECK(sup <= d.upper());
      // Relaxed policy never yields a more conservative value.
      CHECK(sel <= handle(make(HandlerKind::MarginSelector), d, supervised));
      CHECK(sup <= handle(make(HandlerKind::Supervisor, dm), d, supervised));
    }
    CHECK(d.exceedance(handle(make(HandlerKind::WorstCase), d, false)) == 0.0);
  }
}
