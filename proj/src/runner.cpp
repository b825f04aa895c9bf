#include "nikolskii/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "nikolskii/errors.hpp"
#include "nikolskii/harness.hpp"
#include "nikolskii/lemmas.hpp"
#include "nikolskii/random.hpp"

namespace nikolskii {
namespace {

const std::set<std::string> kCommands{"constants", "lemmas", "bari", "nikolskii", "sharpness", "all"};

const std::map<std::string, std::set<std::string>> kGridKeys{
    {"constants", {"alpha", "beta", "mu", "p", "n"}},
    {"lemmas", {"alpha", "mu"}},
    {"bari", {"n", "alpha", "mu", "p"}},
    {"nikolskii", {"n", "ab", "mu", "pq"}},
    {"sharpness", {"tuple", "n"}},
    {"all", {}}};

using Tuples = std::vector<std::vector<double>>;

Tuples scalars(std::initializer_list<double> values) {
  Tuples out;
  for (double v : values) out.push_back({v});
  return out;
}

Grid default_grid(const std::string& command) {
  if (command == "constants")
    return {{"alpha", scalars({-0.5, 0.0, 0.5, 1.0, 2.0})},
            {"beta", scalars({-0.5, 0.0, 1.0})},
            {"mu", scalars({0.0, 0.5, 1.0, 3.0})},
            {"p", scalars({1.0, 1.5, 2.0, 4.0})},
            {"n", scalars({1, 2, 4, 16, 256})}};
  if (command == "lemmas")
    return {{"alpha", scalars({0.0, 0.5, 1.0, 2.0, 3.5})}, {"mu", scalars({0.0, 0.5, 1.0, 2.0, 3.5})}};
  if (command == "bari")
    return {{"n", scalars({1, 2, 4, 8, 16, 32, 64})},
            {"alpha", scalars({0.0, 0.5, 1.0, 2.5})},
            {"mu", scalars({0.0, 0.5, 1.0, 2.5})},
            {"p", scalars({1.0, 2.0, 3.0})}};
  if (command == "nikolskii")
    return {{"n", scalars({1, 2, 4, 8, 16, 32, 64})},
            {"ab", {{-0.5, -0.5}, {0.0, 0.0}, {1.0, 0.0}, {2.0, 1.0}}},
            {"mu", scalars({0.0, 1.0})},
            {"pq", {{1.0, 2.0}, {1.0, kInfinity}, {2.0, 4.0}, {2.0, kInfinity}}}};
  if (command == "sharpness")
    return {{"tuple",
             {{-0.5, -0.5, 0.0, 2.0, kInfinity}, {0.0, 0.0, 0.0, 1.0, kInfinity}, {0.0, 0.0, 0.0, 2.0, kInfinity}}},
            {"n", scalars({2, 4, 8, 16, 32})}};
  return {};
}

[[noreturn]] void usage(const std::string& what) { throw UsageError(what); }

std::vector<double> values_of(const Grid& grid, const std::string& key) {
  std::vector<double> out;
  if (auto it = grid.find(key); it != grid.end())
    for (const auto& t : it->second) out.push_back(t.at(0));
  return out;
}

std::vector<int> degrees_of(const Grid& grid) {
  std::vector<int> out;
  for (double v : values_of(grid, "n")) out.push_back(static_cast<int>(v));
  return out;
}

void check_arity(const Grid& grid) {
  for (const auto& [key, tuples] : grid) {
    const std::size_t arity = key == "ab" || key == "pq" ? 2 : (key == "tuple" ? 5 : 1);
    for (const auto& t : tuples)
      if (t.size() != arity)
        usage("grid entry '" + key + "' needs " + std::to_string(arity) + " value(s) per item");
  }
}

void require_all(const Grid& grid, const std::string& key, bool (*ok)(double), const char* rule) {
  for (double v : values_of(grid, key))
    if (!ok(v)) usage("grid '" + key + "' value " + format_double(v) + " violates " + rule);
}

bool nonneg(double v) { return std::isfinite(v) && v >= 0.0; }
bool half_or_more(double v) { return std::isfinite(v) && v >= -0.5; }
bool exponent_p(double v) { return std::isfinite(v) && v >= 1.0; }
bool positive_int(double v) { return std::isfinite(v) && v >= 1.0 && v == std::floor(v) && v <= 1e6; }

void validate_grid(const std::string& command, const Grid& grid) {
  const auto& allowed = kGridKeys.at(command);
  for (const auto& [key, _] : grid)
    if (!allowed.count(key)) usage("grid key '" + key + "' does not apply to command '" + command + "'");
  check_arity(grid);
  if (command == "constants") {
    require_all(grid, "alpha", half_or_more, "alpha >= -1/2");
    require_all(grid, "beta", half_or_more, "beta >= -1/2");
    require_all(grid, "mu", nonneg, "mu >= 0");
    require_all(grid, "p", exponent_p, "1 <= p < inf");
    require_all(grid, "n", positive_int, "n a positive integer");
  } else if (command == "lemmas") {
    require_all(grid, "alpha", nonneg, "alpha >= 0");
    require_all(grid, "mu", nonneg, "mu >= 0");
  } else if (command == "bari") {
    require_all(grid, "alpha", nonneg, "alpha >= 0");
    require_all(grid, "mu", nonneg, "mu >= 0");
    require_all(grid, "p", exponent_p, "1 <= p < inf");
    require_all(grid, "n", positive_int, "n a positive integer");
  } else if (command == "nikolskii") {
    require_all(grid, "mu", nonneg, "mu >= 0");
    require_all(grid, "n", positive_int, "n a positive integer");
    if (auto it = grid.find("ab"); it != grid.end())
      for (const auto& t : it->second)
        if (!(std::isfinite(t[0]) && t[0] >= t[1] && t[1] >= -0.5))
          usage("grid 'ab' pair violates alpha >= beta >= -1/2");
    if (auto it = grid.find("pq"); it != grid.end())
      for (const auto& t : it->second)
        if (!(exponent_p(t[0]) && t[1] > t[0])) usage("grid 'pq' pair violates 1 <= p < q <= inf");
  } else if (command == "sharpness") {
    require_all(grid, "n", positive_int, "n a positive integer");
    const auto ns = degrees_of(grid);
    if (ns.size() < 3) usage("sharpness needs at least three degrees");
    for (std::size_t i = 1; i < ns.size(); ++i)
      if (ns[i] <= ns[i - 1]) usage("sharpness degrees must be strictly increasing");
    if (auto it = grid.find("tuple"); it != grid.end())
      for (const auto& t : it->second)
        if (!NikolskiiParams{t[0], t[1], t[2], t[3], t[4], 1}.valid())
          usage("grid 'tuple' entry violates alpha >= beta >= -1/2, mu >= 0, 1 <= p < q <= inf");
  }
}

nlohmann::json number_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "infinity") return kInfinity;
  }
  usage("grid values must be numbers or \"inf\"");
}

double parse_number(const std::string& token) {
  if (token == "inf" || token == "infinity") return kInfinity;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    usage("cannot parse number '" + token + "'");
  }
  if (used != token.size()) usage("cannot parse number '" + token + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::string tuple_label(const NikolskiiParams& p) {
  return "alpha=" + format_double(p.alpha) + ";beta=" + format_double(p.beta) + ";mu=" +
         format_double(p.mu) + ";p=" + format_double(p.p) + ";q=" + format_double(p.q);
}

bool is_chebyshev_instance(const NikolskiiParams& p) {
  return p.alpha == -0.5 && p.beta == -0.5 && p.mu == 0.0 && p.p == 2.0 && p.q == kInfinity;
}

constexpr double kSharpnessTolerance = 0.25;

void run_constants(const RunConfig& c, std::vector<ReportRecord>& out) {
  ConstantGrid grid{values_of(c.grid, "alpha"), values_of(c.grid, "beta"), values_of(c.grid, "mu"),
                    values_of(c.grid, "p"), degrees_of(c.grid)};
  for (double alpha : grid.alphas) {
    if (alpha < 0.0) continue;
    for (double mu : grid.mus)
      for (double p : grid.ps)
        for (int n : grid.ns) {
          ReportRecord r;
          r.statement = statement::kConstantTable;
          r.subject = "C";
          r.params = {{"alpha", alpha}, {"mu", mu}, {"p", p}, {"n", static_cast<double>(n)}};
          r.lhs = c_constant(alpha, mu, p, n);
          r.rhs = c_limit(alpha, mu, p);
          r.metric = r.lhs / r.rhs;
          r.note = "rhs is the n -> inf limit";
          out.push_back(r);
        }
  }
  for (double alpha : grid.alphas)
    for (double beta : grid.betas) {
      if (beta > alpha) continue;
      for (double mu : grid.mus)
        for (double p : grid.ps)
          for (int n : grid.ns) {
            ReportRecord r;
            r.statement = statement::kConstantTable;
            r.subject = "B";
            r.params = {{"alpha", alpha}, {"beta", beta}, {"mu", mu}, {"p", p}, {"n", static_cast<double>(n)}};
            r.lhs = b_constant(alpha, beta, mu, p, n);
            r.rhs = b_limit(alpha, beta, mu, p);
            r.metric = r.lhs / r.rhs;
            r.note = "rhs is the n -> inf limit";
            out.push_back(r);
          }
    }
  for (const auto& rec : verify_constant_properties(grid)) out.push_back(to_record(rec));
}

void run_lemmas(const RunConfig& c, std::vector<ReportRecord>& out) {
  std::vector<ExponentPair> combos;
  for (double alpha : values_of(c.grid, "alpha"))
    for (double mu : values_of(c.grid, "mu")) combos.push_back({alpha, mu});
  for (const char* id : {statement::kSegmentLemma, statement::kSegmentMirror,
                         statement::kSegmentLowerBound, statement::kTrigSegmentBound}) {
    const auto sweep = sweep_segments(id, combos, *c.segments);
    for (const auto& r : sweep.reports) out.push_back(to_record(r));
    for (const auto& s : sweep.skipped) out.push_back(to_record(s, id));
  }
}

nlohmann::json load_poly_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) usage("cannot read polynomial file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const std::exception& e) {
    usage("polynomial file '" + path + "' is not valid JSON: " + e.what());
  }
}

void run_bari(const RunConfig& c, std::vector<ReportRecord>& out) {
  BariSuite suite;
  suite.degrees = degrees_of(c.grid);
  suite.alphas = values_of(c.grid, "alpha");
  suite.mus = values_of(c.grid, "mu");
  suite.ps = values_of(c.grid, "p");
  suite.trials = *c.trials;
  suite.seed = c.seed;
  suite.rel_tol = *c.tolerance;
  if (c.poly_file.empty()) {
    for (const auto& r : run_bari_suite(suite)) out.push_back(to_record(r));
    return;
  }
  TrigPoly t;
  try {
    t = trig_from_json(load_poly_file(c.poly_file));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    usage(std::string("bad trig polynomial: ") + e.what());
  }
  for (int n : suite.degrees)
    for (double alpha : suite.alphas)
      for (double mu : suite.mus)
        for (double p : suite.ps) {
          if (n < t.degree_bound()) {
            ReportRecord r;
            r.statement = statement::kBariLemma;
            r.params = {{"alpha", alpha}, {"mu", mu}, {"p", p}, {"n", static_cast<double>(n)}};
            r.subject = c.poly_file;
            r.status = Status::skipped;
            r.note = "polynomial degree exceeds n";
            out.push_back(r);
            continue;
          }
          auto r = to_record(verify_bari(t, {alpha, mu}, p, n, {}, suite.rel_tol));
          r.subject = c.poly_file;
          out.push_back(r);
        }
}

void run_nikolskii(const RunConfig& c, std::vector<ReportRecord>& out) {
  NikolskiiSuite suite;
  suite.degrees = degrees_of(c.grid);
  suite.alpha_beta.clear();
  for (const auto& t : c.grid.at("ab")) suite.alpha_beta.emplace_back(t[0], t[1]);
  suite.mus = values_of(c.grid, "mu");
  suite.pq.clear();
  for (const auto& t : c.grid.at("pq")) suite.pq.emplace_back(t[0], t[1]);
  suite.trials = *c.trials;
  suite.seed = c.seed;
  suite.rel_tol = *c.tolerance;
  if (c.poly_file.empty()) {
    for (const auto& r : run_nikolskii_suite(suite)) out.push_back(to_record(r));
    return;
  }
  AlgebraicPoly poly;
  try {
    poly = algebraic_from_json(load_poly_file(c.poly_file));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    usage(std::string("bad algebraic polynomial: ") + e.what());
  }
  for (int n : suite.degrees)
    for (const auto& [alpha, beta] : suite.alpha_beta)
      for (double mu : suite.mus)
        for (const auto& [p, q] : suite.pq) {
          const NikolskiiParams params{alpha, beta, mu, p, q, n};
          if (n < poly.degree_bound()) {
            ReportRecord r;
            r.statement = statement::kNikolskiiTheorem;
            r.params = {{"alpha", alpha}, {"beta", beta}, {"mu", mu}, {"p", p}, {"q", q},
                        {"n", static_cast<double>(n)}};
            r.subject = c.poly_file;
            r.status = Status::skipped;
            r.note = "polynomial degree exceeds n";
            out.push_back(r);
            continue;
          }
          auto r = to_record(verify_nikolskii(poly, params, {}, suite.rel_tol));
          r.subject = c.poly_file;
          out.push_back(r);
        }
}

void run_sharpness(const RunConfig& c, std::vector<ReportRecord>& out, std::vector<PlotSeries>& plots) {
  const auto ns = degrees_of(c.grid);
  const auto& tuples = c.grid.at("tuple");
  for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
    const auto& t = tuples[ti];
    NikolskiiParams base{t[0], t[1], t[2], t[3], t[4], 1};
    std::vector<std::pair<int, double>> series;
    PlotSeries plot;
    plot.label = tuple_label(base);
    for (int n : ns) {
      NikolskiiParams params = base;
      params.n = n;
      const std::uint64_t seed = derive_seed(c.seed, ti * 1000003ULL + static_cast<std::uint64_t>(n));
      const auto found = extremal_ratio_search(params, *c.restarts, *c.budget, seed);
      const double bound = theorem_factor(params);
      ReportRecord r;
      r.statement = statement::kExtremalSearch;
      r.params = {{"alpha", base.alpha}, {"beta", base.beta}, {"mu", base.mu},
                  {"p", base.p},         {"q", base.q},       {"n", static_cast<double>(n)}};
      r.subject = "seed=" + std::to_string(seed);
      r.lhs = found.best_ratio;
      r.rhs = bound;
      r.metric = found.best_ratio / bound;
      r.status = within_bound(found.best_ratio, bound, *c.tolerance) ? Status::pass : Status::fail;
      r.extra = {{"polynomial", poly_to_json(found.best)},
                 {"start_ratios", found.start_ratios},
                 {"evaluations", found.evaluations}};
      out.push_back(r);
      series.emplace_back(n, found.best_ratio);
      plot.points.emplace_back(std::log(static_cast<double>(n)), std::log(found.best_ratio));
    }
    const auto fit = sharpness_fit(series, base);
    ReportRecord r;
    r.statement = statement::kSharpnessFit;
    r.params = {{"alpha", base.alpha}, {"beta", base.beta}, {"mu", base.mu}, {"p", base.p}, {"q", base.q}};
    r.lhs = fit.fitted_exponent;
    r.rhs = fit.theory_exponent;
    r.metric = std::abs(fit.fitted_exponent - fit.theory_exponent);
    if (is_chebyshev_instance(base)) {
      r.status = r.metric <= kSharpnessTolerance ? Status::pass : Status::fail;
      r.note = "asserted: |fitted - theory| <= 0.25";
    } else {
      r.status = Status::pass;
      r.note = "report-only";
    }
    r.extra = {{"degrees", fit.degrees}, {"best_ratios", fit.best_ratios}, {"r_squared", fit.r_squared}};
    out.push_back(r);
    plots.push_back(std::move(plot));
  }
}

RunConfig resolved_for(const RunConfig& parent, const std::string& command) {
  RunConfig c = parent;
  c.command = command;
  c.grid.clear();
  return resolve_config(c);
}

}  // namespace

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) usage("config must be a JSON object");
  static const std::set<std::string> known{"command", "grid",   "trials",  "seed",   "tolerance", "segments",
                                           "restarts", "budget", "out",    "format", "poly",      "timing"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) usage("unknown config key '" + it.key() + "'");
  RunConfig c;
  try {
    if (j.contains("command")) c.command = j["command"].get<std::string>();
    if (j.contains("trials")) c.trials = j["trials"].get<long>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("tolerance")) c.tolerance = j["tolerance"].get<double>();
    if (j.contains("segments")) c.segments = j["segments"].get<int>();
    if (j.contains("restarts")) c.restarts = j["restarts"].get<int>();
    if (j.contains("budget")) c.budget = j["budget"].get<long>();
    if (j.contains("out")) c.out = j["out"].get<std::string>();
    if (j.contains("format")) c.format = j["format"].get<std::string>();
    if (j.contains("poly")) c.poly_file = j["poly"].get<std::string>();
    if (j.contains("timing")) c.timing = j["timing"].get<bool>();
  } catch (const nlohmann::json::exception& e) {
    usage(std::string("config value has the wrong type: ") + e.what());
  }
  if (j.contains("grid")) {
    if (!j["grid"].is_object()) usage("config 'grid' must be an object");
    for (auto it = j["grid"].begin(); it != j["grid"].end(); ++it) {
      if (!it.value().is_array()) usage("grid '" + it.key() + "' must be an array");
      auto& tuples = c.grid[it.key()];
      for (const auto& item : it.value()) {
        std::vector<double> t;
        if (item.is_array()) {
          for (const auto& v : item) t.push_back(number_from_json(v));
        } else {
          t.push_back(number_from_json(item));
        }
        tuples.push_back(std::move(t));
      }
    }
  }
  return c;
}

Grid parse_grid_shorthand(const std::string& text) {
  Grid grid;
  for (const auto& part : split(text, ';')) {
    const auto entry = trim(part);
    if (entry.empty()) continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos) usage("grid entry '" + entry + "' lacks '='");
    const auto key = trim(entry.substr(0, eq));
    auto& tuples = grid[key];
    tuples.clear();
    const auto rest = trim(entry.substr(eq + 1));
    if (rest.empty()) continue;
    for (const auto& item : split(rest, ',')) {
      std::vector<double> t;
      for (const auto& v : split(trim(item), ':')) t.push_back(parse_number(trim(v)));
      tuples.push_back(std::move(t));
    }
  }
  return grid;
}

RunConfig resolve_config(RunConfig c) {
  if (!kCommands.count(c.command))
    usage("unknown command '" + c.command + "' (expected constants, lemmas, bari, nikolskii, sharpness, all)");
  if (c.format != "json" && c.format != "csv") usage("format must be json or csv");
  if (c.command == "all" && !c.grid.empty()) usage("command 'all' runs default grids; --grid does not apply");
  if (!c.poly_file.empty() && c.command != "bari" && c.command != "nikolskii")
    usage("--poly applies to bari and nikolskii only");
  Grid grid = default_grid(c.command);
  for (auto& [key, tuples] : c.grid) grid[key] = tuples;
  c.grid = std::move(grid);
  validate_grid(c.command, c.grid);
  if (c.command == "bari" || c.command == "nikolskii" || c.command == "all") {
    if (!c.trials) c.trials = 1000;
    if (*c.trials < 0) usage("trials must be >= 0");
  } else {
    c.trials.reset();
  }
  if (!c.tolerance) c.tolerance = kRatioTolerance;
  if (!(*c.tolerance > 0.0) || !std::isfinite(*c.tolerance)) usage("tolerance must be positive");
  if (c.command == "lemmas" || c.command == "all") {
    if (!c.segments) c.segments = 100;
    if (*c.segments < 1) usage("segments must be >= 1");
  } else {
    c.segments.reset();
  }
  if (c.command == "sharpness" || c.command == "all") {
    if (!c.restarts) c.restarts = 2;
    if (!c.budget) c.budget = 400;
    if (*c.restarts < 1) usage("restarts must be >= 1");
    if (*c.budget < 1) usage("budget must be >= 1");
  } else {
    c.restarts.reset();
    c.budget.reset();
  }
  return c;
}

nlohmann::json config_to_json(const RunConfig& c) {
  nlohmann::json grid = nlohmann::json::object();
  for (const auto& [key, tuples] : c.grid) {
    nlohmann::json items = nlohmann::json::array();
    for (const auto& t : tuples) {
      if (t.size() == 1) {
        items.push_back(number_json(t[0]));
      } else {
        nlohmann::json tuple = nlohmann::json::array();
        for (double v : t) tuple.push_back(number_json(v));
        items.push_back(tuple);
      }
    }
    grid[key] = items;
  }
  nlohmann::json j = {{"command", c.command}, {"grid", grid}, {"seed", c.seed},
                      {"tolerance", *c.tolerance}, {"format", c.format}};
  if (c.trials) j["trials"] = *c.trials;
  if (c.segments) j["segments"] = *c.segments;
  if (c.restarts) j["restarts"] = *c.restarts;
  if (c.budget) j["budget"] = *c.budget;
  if (!c.poly_file.empty()) j["poly"] = c.poly_file;
  return j;
}

ReportEnvelope run_command(const RunConfig& config) {
  const RunConfig c = resolve_config(config);
  const auto start = std::chrono::steady_clock::now();
  ReportEnvelope envelope;
  envelope.tool_version = kToolVersion;
  envelope.config = config_to_json(c);
  auto& out = envelope.records;
  if (c.command == "constants") {
    run_constants(c, out);
  } else if (c.command == "lemmas") {
    run_lemmas(c, out);
  } else if (c.command == "bari") {
    run_bari(c, out);
  } else if (c.command == "nikolskii") {
    run_nikolskii(c, out);
  } else if (c.command == "sharpness") {
    run_sharpness(c, out, envelope.plots);
  } else {
    run_constants(resolved_for(c, "constants"), out);
    run_lemmas(resolved_for(c, "lemmas"), out);
    run_bari(resolved_for(c, "bari"), out);
    run_nikolskii(resolved_for(c, "nikolskii"), out);
    run_sharpness(resolved_for(c, "sharpness"), out, envelope.plots);
  }
  if (c.timing)
    envelope.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return envelope;
}

int exit_code(const ReportEnvelope& envelope) { return envelope.summary().failed == 0 ? 0 : 1; }

}  // namespace nikolskii
