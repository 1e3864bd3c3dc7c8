#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "safegap/config.hpp"
#include "safegap/errors.hpp"
#include "safegap/report.hpp"

using namespace safegap;

#ifndef SAFEGAP_SOURCE_DIR
#define SAFEGAP_SOURCE_DIR "."
#endif

TEST_CASE("empty document reproduces the defaults") {
  const RunConfig c = parse_run_config("{}");
  CHECK(c.use_cases.size() == 2);
  CHECK(c.use_cases[0].reaction_time == 0.1);
  CHECK(c.use_cases[1].reaction_time == 0.8);
  CHECK(c.kinematics.follower_max_accel == 2.0);
  CHECK(c.kinematics.gravity == 9.81);
  CHECK_FALSE(c.follower_brake_given);
  CHECK(c.handlers.size() == 6);
  CHECK(c.handlers[0].config.kind == HandlerKind::WorstCase);
  CHECK(c.handlers[5].config.kind == HandlerKind::AdaptiveMarginSelector);
  CHECK(resolve_threshold(c.handlers[2].config.policy, true) == 1e-6);
  CHECK(resolve_threshold(c.handlers[3].config.policy, true) == 1e-5);
}

TEST_CASE("shipped default config matches the built-in defaults") {
  const auto from_file =
      load_run_config(std::filesystem::path(SAFEGAP_SOURCE_DIR) / "configs/default.json");
  const auto study_file = run_study(from_file);
  const auto study_default = run_study(default_run_config());
  CHECK(table1_csv(study_file.results) == table1_csv(study_default.results));
}

TEST_CASE("validation errors name the offending field") {
  CHECK_THROWS_WITH_AS(parse_run_config(R"({"scenario": {"supervision_probability": 2}})"),
                       doctest::Contains("supervision_probability"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_run_config(R"({"kinematics": {"follower_max_accel": "fast"}})"),
                       doctest::Contains("kinematics.follower_max_accel"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_run_config(R"({"handlers": [{"kind": "oracle"}]})"),
                       doctest::Contains("handlers[0].kind"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_run_config(R"({"scenario": {"velocitys_kmh": [60]}})"),
                       doctest::Contains("scenario.velocitys_kmh"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_run_config(R"({"use_cases": []})"),
                       doctest::Contains("use_cases"), ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_run_config(R"({"handlers": [{"kind": "adaptive_supervisor", "threshold": 1e-6}]})"),
      doctest::Contains("handlers[0]"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"sweep": {"u_min": 0.5, "u_max": 0.1}})"),
                  ConfigError);
  CHECK_THROWS_AS(load_run_config("/nonexistent/safegap.json"), IoError);
}

TEST_CASE("explicit follower braking skips calibration") {
  const RunConfig c = parse_run_config(R"({"kinematics": {"follower_min_brake": 7.5}})");
  CHECK(c.follower_brake_given);
  CHECK(resolved_kinematics(c).follower_min_brake == 7.5);
  const auto study = run_study(c);
  CHECK_FALSE(study.calibrated);
  CHECK(study.follower_min_brake == 7.5);
}

TEST_CASE("fixed margins are not re-optimized") {
  const RunConfig c = parse_run_config(
      R"({"handlers": [{"kind": "supervisor", "threshold": 1e-6, "delta_mu": 0.2, "label": "sup20"}]})");
  const auto study = run_study(c);
  REQUIRE(study.results.size() == 2);
  CHECK(study.results[0].delta_mu == 0.2);
  CHECK(study.results[0].handler_label == "sup20");
}

TEST_CASE("number formatting") {
  CHECK(format_fixed(14.6700001, 3) == "14.670");
  CHECK(format_fixed(-0.0001, 3) == "0.000");
  CHECK(format_fixed(6.40784, 4) == "6.4078");
  CHECK(format_full(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_full(14.670000000000002)) == 14.670000000000002);
  CHECK_THROWS_AS(format_full(std::nan("")), NumericalError);
  CHECK_THROWS_AS(format_fixed(INFINITY, 3), NumericalError);
}

TEST_CASE("table1 csv layout") {
  const auto study = run_study(default_run_config());
  const std::string csv = table1_csv(study.results);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "handler,use_case,expected_distance_m,expected_mu");
  int rows = 0;
  std::string last_use_case;
  while (std::getline(in, line)) {
    ++rows;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 4);
    CHECK(std::isfinite(std::stod(cells[2])));
    CHECK(std::isfinite(std::stod(cells[3])));
    CHECK(cells[1] >= last_use_case);
    last_use_case = cells[1];
  }
  CHECK(rows == 12);

  const std::string table = format_table(study);
  CHECK(table.find("worst_case") != std::string::npos);
  CHECK(table.find("14.670") != std::string::npos);
}

TEST_CASE("write_text_file creates directories and reports failures") {
  const auto dir = std::filesystem::temp_directory_path() / "safegap_report_test" / "nested";
  std::filesystem::remove_all(dir.parent_path());
  write_text_file(dir / "x.csv", "a,b\n");
  std::ifstream in(dir / "x.csv");
  std::string s;
  std::getline(in, s);
  CHECK(s == "a,b");
  CHECK_THROWS_AS(write_text_file("/proc/safegap/forbidden.csv", "x"), IoError);
  std::filesystem::remove_all(dir.parent_path());
}
