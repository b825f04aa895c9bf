#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "nikolskii/report.hpp"

using namespace nikolskii;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "nikolskii_report_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("float formatting round-trips bitwise") {
  std::mt19937_64 gen(20240601);
  for (int i = 0; i < 100000; ++i) {
    std::uint64_t bits = gen();
    double v;
    std::memcpy(&v, &bits, sizeof v);
    if (!std::isfinite(v)) continue;
    const std::string s = format_double(v);
    const double back = std::strtod(s.c_str(), nullptr);
    REQUIRE(std::memcmp(&back, &v, sizeof v) == 0);
    const double via_json = nlohmann::json::parse(dump_json(nlohmann::json(v))).get<double>();
    REQUIRE(std::memcmp(&via_json, &v, sizeof v) == 0);
  }
  CHECK(format_double(kInfinity) == "inf");
  CHECK(format_double(-kInfinity) == "-inf");
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("JSON dump is sorted and indented") {
  nlohmann::json j = {{"zeta", 1.5}, {"alpha", {1, 2}}, {"mid", {{"b", kInfinity}, {"a", "x"}}}, {"e", nlohmann::json::object()}};
  CHECK(dump_json(j) ==
        "{\n"
        "  \"alpha\": [\n"
        "    1,\n"
        "    2\n"
        "  ],\n"
        "  \"e\": {},\n"
        "  \"mid\": {\n"
        "    \"a\": \"x\",\n"
        "    \"b\": \"inf\"\n"
        "  },\n"
        "  \"zeta\": 1.5\n"
        "}\n");
}

TEST_CASE("empty envelope") {
  ReportEnvelope e;
  e.tool_version = "1.0.0";
  e.config = nlohmann::json::object();
  const auto j = nlohmann::json::parse(render_json(e));
  CHECK(j["summary"]["total"] == 0);
  CHECK(j["summary"]["passed"] == 0);
  CHECK(j["summary"]["failed"] == 0);
  CHECK(j["summary"]["skipped"] == 0);
  CHECK(j["records"].empty());
  CHECK_FALSE(j.contains("wall_time_s"));
  CHECK(render_csv(e) == std::string(kCsvHeader) + "\n");
}

TEST_CASE("lemma report to CSV") {
  LemmaReport r;
  r.statement = statement::kSegmentLemma;
  r.alpha = 1;
  r.mu = 1;
  r.segment = Segment::from_ends(0.25, 0.75);
  r.lhs = 1.0 / 12;
  r.rhs = 0.11458333333333333;
  r.margin = r.rhs - r.lhs;
  r.pass = true;
  ReportEnvelope e;
  e.records.push_back(to_record(r));
  const auto csv = render_csv(e);
  std::istringstream in(csv);
  std::string header, row, extra;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == kCsvHeader);
  CHECK(row.rfind("segment-lemma,,alpha=1;mu=1;a=0.25;b=0.75;l=0.5,", 0) == 0);
  CHECK(row.find(",pass,") != std::string::npos);
  CHECK_FALSE(std::getline(in, extra));
}

TEST_CASE("CSV quoting") {
  ReportEnvelope e;
  ReportRecord r;
  r.statement = "x";
  r.note = "a, \"b\"";
  e.records.push_back(r);
  CHECK(render_csv(e).find("\"a, \"\"b\"\"\"") != std::string::npos);
}

TEST_CASE("summary counts") {
  ReportEnvelope e;
  for (Status s : {Status::pass, Status::fail, Status::pass, Status::skipped}) {
    ReportRecord r;
    r.status = s;
    e.records.push_back(r);
  }
  const auto s = e.summary();
  CHECK(s.total == 4);
  CHECK(s.passed == 2);
  CHECK(s.failed == 1);
  CHECK(s.skipped == 1);
  const auto j = nlohmann::json::parse(render_json(e));
  CHECK(j["records"][3]["status"] == "skipped");
  CHECK_FALSE(j["records"][3].contains("lhs"));
}

TEST_CASE("write_report is atomic and writes plot data") {
  const auto dir = scratch_dir();
  const auto path = (dir / "r.json").string();
  ReportEnvelope e;
  e.tool_version = "t";
  e.config = nlohmann::json::object();
  PlotSeries s;
  s.label = "demo";
  s.points = {{0.0, 1.0}, {std::log(2.0), 1.5}};
  e.plots.push_back(s);
  write_report(e, path, ReportFormat::json);
  CHECK(slurp(path) == render_json(e));
  CHECK(slurp(path + ".plot.dat") == "# demo\n0 1\n0.69314718055994529 1.5\n");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  const auto bad = (dir / "missing" / "r.json").string();
  CHECK_THROWS_AS(write_report(e, bad, ReportFormat::csv), ReportIoError);
  CHECK_FALSE(std::filesystem::exists(bad + ".tmp"));
}

TEST_CASE("plot data blocks") {
  PlotSeries a{"a", {{1, 2}}}, b{"b", {{3, 4}}};
  CHECK(render_plot_data({a, b}) == "# a\n1 2\n\n\n# b\n3 4\n");
}

TEST_CASE("polynomial exchange format") {
  const AlgebraicPoly p({1.5, -2, 0.25});
  const auto j = poly_to_json(p);
  CHECK(j["kind"] == "algebraic");
  CHECK(j["n"] == 2);
  CHECK(algebraic_from_json(nlohmann::json::parse(dump_json(j))).cheb == p.cheb);
  const TrigPoly t(0.5, {1, 2}, {3, 4});
  const auto tj = poly_to_json(t);
  CHECK(tj["coefficients"] == nlohmann::json({0.5, 1, 2, 3, 4}));
  const auto back = trig_from_json(tj);
  CHECK(back.a0 == 0.5);
  CHECK(back.cos_coeffs == std::vector<double>{1, 2});
  CHECK(back.sin_coeffs == std::vector<double>{3, 4});
  CHECK_THROWS(algebraic_from_json(tj));
  CHECK_THROWS(trig_from_json({{"kind", "trig"}, {"n", 1}, {"coefficients", {1, 2}}}));
  CHECK_THROWS(algebraic_from_json({{"kind", "algebraic"}, {"n", -1}, {"coefficients", nlohmann::json::array()}}));
}
