#pragma once

#include <cstdint>
#include <json.hpp>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nikolskii/report.hpp"

namespace nikolskii {

/// Invalid configuration; maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Grid entries are tuples: scalar keys hold 1-tuples, "ab" holds (alpha, beta),
/// "pq" holds (p, q), "tuple" holds (alpha, beta, mu, p, q).
using Grid = std::map<std::string, std::vector<std::vector<double>>>;

struct RunConfig {
  std::string command;  // constants | lemmas | bari | nikolskii | sharpness | all
  Grid grid;
  std::optional<long> trials;
  std::uint64_t seed = 1;
  std::optional<double> tolerance;  // relative slack of the inequality checks
  std::optional<int> segments;      // candidates per (alpha, mu) in lemma sweeps
  std::optional<int> restarts;      // random starts per degree in sharpness
  std::optional<long> budget;       // simplex evaluations per start
  std::string out;                  // empty: stdout
  std::string format = "json";
  std::string poly_file;            // exchange-format polynomial for bari/nikolskii
  bool timing = false;
};

inline constexpr const char* kToolVersion = "1.0.0";

/// Reads the config-file form; unknown keys are usage errors.
RunConfig config_from_json(const nlohmann::json& j);

/// Parses "key=v1,v2;key2=a:b,c:d" into grid entries; "inf" is accepted.
Grid parse_grid_shorthand(const std::string& text);

/// Fills defaults for the command and checks every grid entry against the
/// hypotheses of the targeted statements. Throws UsageError.
RunConfig resolve_config(RunConfig config);

/// Echo of a resolved config as stored in the report.
nlohmann::json config_to_json(const RunConfig& config);

/// Runs a resolved config. Throws UsageError if the config is invalid.
ReportEnvelope run_command(const RunConfig& config);

/// 0 when nothing failed, 1 otherwise.
int exit_code(const ReportEnvelope& envelope);

}  // namespace nikolskii
