// Command-line front end: parses options, runs one command, writes the report.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "nikolskii/runner.hpp"

namespace {

nikolskii::RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw nikolskii::UsageError("cannot read config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const std::exception& e) {
    throw nikolskii::UsageError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return nikolskii::config_from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verifier for weighted Nikolskii-type inequalities"};
  app.set_version_flag("--version", nikolskii::kToolVersion);

  std::string command, cmd_option, config_path, out, format, poly;
  std::vector<std::string> grid_texts;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<long> trials, budget;
  std::optional<int> segments, restarts;
  bool timing = false;

  app.add_option("command", command, "constants | lemmas | bari | nikolskii | sharpness | all");
  app.add_option("--cmd", cmd_option, "command, alternative to the positional form");
  app.add_option("--config", config_path, "JSON config file; command-line options override it");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--out", out, "report path (stdout when omitted)");
  app.add_option("--format", format, "json or csv");
  app.add_option("--tol", tol, "relative tolerance of the inequality checks");
  app.add_option("--grid", grid_texts, "grid override, e.g. \"alpha=0,1;mu=0.5\" or \"pq=1:inf\"; repeatable");
  app.add_option("--trials", trials, "random trials for bari / nikolskii");
  app.add_option("--segments", segments, "segments per (alpha, mu) in the lemma sweep");
  app.add_option("--restarts", restarts, "random restarts per degree in sharpness");
  app.add_option("--budget", budget, "objective evaluations per simplex start");
  app.add_option("--poly", poly, "exchange-format polynomial to verify instead of random trials");
  app.add_flag("--timing", timing, "record wall time in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    nikolskii::RunConfig config;
    if (!config_path.empty()) config = load_config_file(config_path);
    if (!command.empty() && !cmd_option.empty() && command != cmd_option)
      throw nikolskii::UsageError("positional command and --cmd disagree");
    if (!command.empty()) config.command = command;
    if (!cmd_option.empty()) config.command = cmd_option;
    if (config.command.empty()) throw nikolskii::UsageError("no command given");
    if (seed) config.seed = *seed;
    if (!out.empty()) config.out = out;
    if (!format.empty()) config.format = format;
    if (tol) config.tolerance = tol;
    if (trials) config.trials = trials;
    if (segments) config.segments = segments;
    if (restarts) config.restarts = restarts;
    if (budget) config.budget = budget;
    if (!poly.empty()) config.poly_file = poly;
    if (timing) config.timing = true;
    for (const auto& text : grid_texts)
      for (auto& [key, tuples] : nikolskii::parse_grid_shorthand(text)) config.grid[key] = tuples;

    config = nikolskii::resolve_config(config);
    const auto envelope = nikolskii::run_command(config);
    const auto format_kind =
        config.format == "csv" ? nikolskii::ReportFormat::csv : nikolskii::ReportFormat::json;
    if (config.out.empty()) {
      std::cout << (format_kind == nikolskii::ReportFormat::csv ? nikolskii::render_csv(envelope)
                                                                 : nikolskii::render_json(envelope));
    } else {
      nikolskii::write_report(envelope, config.out, format_kind);
    }
    const auto s = envelope.summary();
    std::cerr << "records=" << s.total << " passed=" << s.passed << " failed=" << s.failed
              << " skipped=" << s.skipped << "\n";
    return nikolskii::exit_code(envelope);
  } catch (const nikolskii::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
