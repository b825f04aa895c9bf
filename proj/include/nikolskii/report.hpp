#pragma once

#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nikolskii/harness.hpp"
#include "nikolskii/lemmas.hpp"
#include "nikolskii/poly.hpp"

namespace nikolskii {

enum class Status { pass, fail, skipped };

const char* to_string(Status s);

/// One row of a report, whatever statement produced it.
struct ReportRecord {
  std::string statement;
  ParamList params;
  std::string subject;
  double lhs = 0.0;
  double rhs = 0.0;
  double metric = 0.0;  // ratio for inequalities, margin for segment lemmas
  Status status = Status::pass;
  std::string note;
  nlohmann::json extra;  // null unless the record carries a polynomial or fit
};

ReportRecord to_record(const InequalityRecord& r);
ReportRecord to_record(const LemmaReport& r);
ReportRecord to_record(const SkippedCandidate& c, const std::string& statement_id);

struct Summary {
  long total = 0;
  long passed = 0;
  long failed = 0;
  long skipped = 0;
};

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (log n, log best ratio)
};

struct ReportEnvelope {
  std::string tool_version;
  nlohmann::json config;
  std::vector<ReportRecord> records;
  std::vector<PlotSeries> plots;
  std::optional<double> wall_time_s;  // only when timing was requested

  Summary summary() const;
};

enum class ReportFormat { json, csv };

class ReportIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits; non-finite values as inf, -inf, nan.
std::string format_double(double v);

/// Deterministic JSON text: keys sorted, 2-space indent, floats via format_double,
/// non-finite floats as the strings "inf", "-inf", "nan".
std::string dump_json(const nlohmann::json& j);

nlohmann::json envelope_to_json(const ReportEnvelope& envelope);
std::string render_json(const ReportEnvelope& envelope);
std::string render_csv(const ReportEnvelope& envelope);
/// Blank-line separated blocks, one per series, each headed by "# label".
std::string render_plot_data(const std::vector<PlotSeries>& plots);

inline constexpr const char* kCsvHeader = "statement,subject,params,lhs,rhs,metric,status,note";

/// Writes through a temporary file and renames it into place; the temporary is
/// removed on failure. Sharpness plot data goes to path + ".plot.dat".
void write_report(const ReportEnvelope& envelope, const std::string& path, ReportFormat format);

/// Polynomial exchange format: {"kind": "algebraic"|"trig", "n": n,
/// "coefficients": [...]}. Algebraic coefficients are c_0..c_n in the
/// Chebyshev basis; trig coefficients are a0, a_1..a_n, b_1..b_n.
nlohmann::json poly_to_json(const AlgebraicPoly& p);
nlohmann::json poly_to_json(const TrigPoly& t);
AlgebraicPoly algebraic_from_json(const nlohmann::json& j);
TrigPoly trig_from_json(const nlohmann::json& j);

}  // namespace nikolskii
