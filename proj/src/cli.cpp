#include "safegap/cli.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "safegap/config.hpp"
#include "safegap/errors.hpp"
#include "safegap/report.hpp"

namespace safegap {

namespace {

struct Options {
  std::string config_path;
  std::string out_dir;
  std::optional<double> target;
  std::optional<double> u_min;
  std::optional<double> u_max;
  std::optional<std::size_t> points;
  std::vector<double> sigmas;
  std::vector<double> mus;
};

RunConfig load(const Options& opts) {
  RunConfig config =
      opts.config_path.empty() ? default_run_config() : load_run_config(opts.config_path);
  if (!opts.out_dir.empty()) config.output_dir = opts.out_dir;
  return config;
}

int cmd_simulate(const Options& opts, std::ostream& out) {
  const RunConfig config = load(opts);
  const StudyResult study = run_study(config);
  write_text_file(config.output_dir / "table1.csv", table1_csv(study.results));
  out << format_table(study);
  out << "wrote " << (config.output_dir / "table1.csv").string() << "\n";
  return kExitOk;
}

int cmd_sweep(const Options& opts, std::ostream& out) {
  RunConfig config = load(opts);
  if (opts.u_min) config.sweep.u_min = *opts.u_min;
  if (opts.u_max) config.sweep.u_max = *opts.u_max;
  if (opts.points) config.sweep.points = *opts.points;
  if (!opts.sigmas.empty()) config.sweep.sigmas = opts.sigmas;
  if (!opts.mus.empty()) config.sweep.mus = opts.mus;
  config.validate();
  const auto points = run_sweep(config);
  write_text_file(config.output_dir / "sweep.csv", sweep_csv(points));
  out << "wrote " << points.size() << " sweep points to "
      << (config.output_dir / "sweep.csv").string() << "\n";
  return kExitOk;
}

int cmd_calibrate(const Options& opts, std::ostream& out) {
  RunConfig config = load(opts);
  if (opts.target) {
    if (!(*opts.target > 0.0)) {
      throw ConfigError("--target must be a positive distance in meters");
    }
    config.calibration.target_worst_case_distance = *opts.target;
  }
  config.follower_brake_given = false;
  config.validate();
  const KinematicParams kin = resolved_kinematics(config);
  out << format_fixed(kin.follower_min_brake, 4) << "\n";
  return kExitOk;
}

int cmd_optimize_margin(const Options& opts, std::ostream& out) {
  const RunConfig config = load(opts);
  for (const auto& choice : optimize_margins(config)) {
    out << choice.handler_label << " " << choice.use_case
        << " delta_mu=" << format_fixed(choice.search.delta_mu, 3)
        << " expected_distance_m=" << format_fixed(choice.search.expected_distance, 3)
        << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Runtime uncertainty handling patterns for platooning safe distances",
               "safegap"};
  app.require_subcommand(1);
  Options opts;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opts.config_path, "JSON run configuration");
    cmd->add_option("--out", opts.out_dir, "Output directory");
  };

  auto* simulate = app.add_subcommand("simulate", "Compare all handlers, write table1.csv");
  add_common(simulate);

  auto* sweep = app.add_subcommand("sweep", "Threshold/dispersion sensitivity, write sweep.csv");
  add_common(sweep);
  sweep->add_option("--u-min", opts.u_min, "Smallest acceptable uncertainty");
  sweep->add_option("--u-max", opts.u_max, "Largest acceptable uncertainty");
  sweep->add_option("--points", opts.points, "Number of log-spaced thresholds");
  sweep->add_option("--sigmas", opts.sigmas, "Dispersions, comma separated")
      ->delimiter(',');
  sweep->add_option("--mus", opts.mus, "Friction means, comma separated")
      ->delimiter(',');

  auto* calibrate = app.add_subcommand("calibrate", "Solve a_min,brake,F for a worst-case distance");
  add_common(calibrate);
  calibrate->add_option("--target", opts.target, "Expected worst-case distance [m]");

  auto* optimize = app.add_subcommand("optimize-margin", "Print the optimal delta_mu per supervisor");
  add_common(optimize);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(opts, out);
    if (sweep->parsed()) return cmd_sweep(opts, out);
    if (calibrate->parsed()) return cmd_calibrate(opts, out);
    if (optimize->parsed()) return cmd_optimize_margin(opts, out);
  } catch (const ConfigError& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return kExitValidation;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::domain_error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitValidation;
}

}  // namespace safegap
