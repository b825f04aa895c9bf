#include "nikolskii/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace nikolskii {
namespace {

std::string params_text(const ParamList& params) {
  std::string out;
  for (const auto& [name, value] : params) {
    if (!out.empty()) out += ';';
    out += name + '=' + format_double(value);
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void dump_into(const nlohmann::json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + nlohmann::json(it.key()).dump() + ": ";
        dump_into(it.value(), out, indent + 2);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        dump_into(v, out, indent + 2);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "\"" + format_double(v) + "\"";
      return;
    }
    default:
      out += j.dump();
  }
}

nlohmann::json record_to_json(const ReportRecord& r) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [name, value] : r.params) params[name] = value;
  nlohmann::json j = {{"statement", r.statement}, {"subject", r.subject}, {"params", params},
                      {"status", to_string(r.status)}, {"note", r.note}};
  if (r.status != Status::skipped) {
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["metric"] = r.metric;
  }
  if (!r.extra.is_null()) j["extra"] = r.extra;
  return j;
}

void write_file(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw ReportIoError("cannot open '" + tmp + "' for writing");
    file << text;
    file.flush();
    if (!file) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw ReportIoError("write failed for '" + path + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw ReportIoError("cannot move report into place at '" + path + "'");
  }
}

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::skipped:
      return "skipped";
  }
  return "fail";
}

ReportRecord to_record(const InequalityRecord& r) {
  ReportRecord out;
  out.statement = r.statement;
  out.params = r.params;
  out.subject = r.subject;
  out.lhs = r.lhs;
  out.rhs = r.rhs;
  out.metric = r.ratio;
  out.status = r.pass ? Status::pass : Status::fail;
  return out;
}

ReportRecord to_record(const LemmaReport& r) {
  ReportRecord out;
  out.statement = r.statement;
  out.params = {{"alpha", r.alpha}, {"mu", r.mu}, {"a", r.segment.a}, {"b", r.segment.b},
                {"l", r.segment.l}};
  out.lhs = r.lhs;
  out.rhs = r.rhs;
  out.metric = r.margin;
  out.status = r.pass ? Status::pass : Status::fail;
  if (r.convention_case) out.note = "convention case alpha = mu = 0";
  return out;
}

ReportRecord to_record(const SkippedCandidate& c, const std::string& statement_id) {
  ReportRecord out;
  out.statement = statement_id;
  out.params = {{"alpha", c.alpha}, {"mu", c.mu}, {"a", c.segment.a}, {"b", c.segment.b},
                {"l", c.segment.l}};
  out.status = Status::skipped;
  out.note = "outside hypotheses";
  return out;
}

Summary ReportEnvelope::summary() const {
  Summary s;
  for (const auto& r : records) {
    ++s.total;
    switch (r.status) {
      case Status::pass:
        ++s.passed;
        break;
      case Status::fail:
        ++s.failed;
        break;
      case Status::skipped:
        ++s.skipped;
        break;
    }
  }
  return s;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump_json(const nlohmann::json& j) {
  std::string out;
  dump_into(j, out, 0);
  out += '\n';
  return out;
}

nlohmann::json envelope_to_json(const ReportEnvelope& envelope) {
  const Summary s = envelope.summary();
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : envelope.records) records.push_back(record_to_json(r));
  nlohmann::json j = {
      {"tool_version", envelope.tool_version},
      {"config", envelope.config},
      {"records", records},
      {"summary", {{"total", s.total}, {"passed", s.passed}, {"failed", s.failed}, {"skipped", s.skipped}}}};
  if (envelope.wall_time_s) j["wall_time_s"] = *envelope.wall_time_s;
  return j;
}

std::string render_json(const ReportEnvelope& envelope) { return dump_json(envelope_to_json(envelope)); }

std::string render_csv(const ReportEnvelope& envelope) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : envelope.records) {
    const bool skipped = r.status == Status::skipped;
    out += csv_field(r.statement) + ',' + csv_field(r.subject) + ',' + csv_field(params_text(r.params)) +
           ',' + (skipped ? "" : format_double(r.lhs)) + ',' + (skipped ? "" : format_double(r.rhs)) +
           ',' + (skipped ? "" : format_double(r.metric)) + ',' + to_string(r.status) + ',' +
           csv_field(r.note) + '\n';
  }
  return out;
}

std::string render_plot_data(const std::vector<PlotSeries>& plots) {
  std::string out;
  for (std::size_t i = 0; i < plots.size(); ++i) {
    if (i > 0) out += "\n\n";
    out += "# " + plots[i].label + "\n";
    for (const auto& [x, y] : plots[i].points) out += format_double(x) + ' ' + format_double(y) + '\n';
  }
  return out;
}

void write_report(const ReportEnvelope& envelope, const std::string& path, ReportFormat format) {
  write_file(path, format == ReportFormat::json ? render_json(envelope) : render_csv(envelope));
  if (!envelope.plots.empty()) write_file(path + ".plot.dat", render_plot_data(envelope.plots));
}

nlohmann::json poly_to_json(const AlgebraicPoly& p) {
  return {{"kind", "algebraic"}, {"n", p.degree_bound()}, {"coefficients", p.cheb}};
}

nlohmann::json poly_to_json(const TrigPoly& t) {
  std::vector<double> c{t.a0};
  c.insert(c.end(), t.cos_coeffs.begin(), t.cos_coeffs.end());
  c.insert(c.end(), t.sin_coeffs.begin(), t.sin_coeffs.end());
  return {{"kind", "trig"}, {"n", t.degree_bound()}, {"coefficients", c}};
}

namespace {

std::vector<double> exchange_coefficients(const nlohmann::json& j, const char* kind,
                                          std::size_t expected_for_n(int)) {
  if (!j.is_object() || j.value("kind", "") != kind)
    throw std::invalid_argument(std::string("polynomial record must have kind '") + kind + "'");
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<int>() < 0)
    throw std::invalid_argument("polynomial record needs a nonnegative integer n");
  if (!j.contains("coefficients") || !j["coefficients"].is_array())
    throw std::invalid_argument("polynomial record needs a coefficients array");
  std::vector<double> c;
  for (const auto& v : j["coefficients"]) {
    if (!v.is_number()) throw std::invalid_argument("coefficients must be numbers");
    c.push_back(v.get<double>());
  }
  if (c.size() != expected_for_n(j["n"].get<int>()))
    throw std::invalid_argument("coefficient count does not match n");
  return c;
}

std::size_t algebraic_count(int n) { return static_cast<std::size_t>(n) + 1; }
std::size_t trig_count(int n) { return 2 * static_cast<std::size_t>(n) + 1; }

}  // namespace

AlgebraicPoly algebraic_from_json(const nlohmann::json& j) {
  return AlgebraicPoly(exchange_coefficients(j, "algebraic", algebraic_count));
}

TrigPoly trig_from_json(const nlohmann::json& j) {
  const auto c = exchange_coefficients(j, "trig", trig_count);
  const std::size_t n = (c.size() - 1) / 2;
  return TrigPoly(c[0], std::vector<double>(c.begin() + 1, c.begin() + 1 + static_cast<long>(n)),
                  std::vector<double>(c.begin() + 1 + static_cast<long>(n), c.end()));
}

}  // namespace nikolskii
