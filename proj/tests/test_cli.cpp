#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "casimir/cli/config.hpp"
#include "casimir/cli/run.hpp"

namespace {

using namespace casimir;
using namespace casimir::cli;
using nlohmann::json;
constexpr double pi = std::numbers::pi;

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string csv(const RunConfig& cfg) {
  std::ostringstream os;
  write_csv(os, cfg, compute(cfg));
  return os.str();
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

TEST(ParseConfig, MinimalIdealDocumentGetsDefaults) {
  const RunConfig c = parse_config(R"({"mode": "ideal", "cavity": {"gap_um": 1}})");
  EXPECT_EQ(c.mode, Mode::ideal);
  EXPECT_DOUBLE_EQ(c.gap, 1e-6);
  EXPECT_EQ(c.eps_cavity, 1.0);
  EXPECT_EQ(c.output.units, Units::si);
  EXPECT_EQ(c.output.format, Format::csv);
  EXPECT_EQ(c.output.path, "-");
  EXPECT_EQ(c.quadrature.rel_tol, 1e-6);
  EXPECT_FALSE(c.sweep);
  EXPECT_TRUE(std::holds_alternative<IdealConductor>(c.cavity().plate1));
}

TEST(ParseConfig, DegreesBecomeRadiansAndRoundTrip) {
  const RunConfig c = parse_config(
      R"({"mode": "uniaxial", "cavity": {"gap_um": 0.5, "chi_deg": 30,
          "eps_par": 2, "eps_perp": 9, "axis_deg": 10}})");
  EXPECT_NEAR(c.chi, pi / 6, 1e-15);
  EXPECT_NEAR(c.material.axis, pi / 18, 1e-15);
  const json again = to_json(c);
  EXPECT_NEAR(again["cavity"]["chi_deg"].get<double>(), 30.0, 1e-12);
  const RunConfig d = from_json(again);
  EXPECT_NEAR(d.chi, c.chi, 1e-15);
  EXPECT_EQ(to_json(d).dump(), again.dump());
}

TEST(ParseConfig, ErrorsNameTheField) {
  EXPECT_NE(error_of(R"({"mode": "ideal", "cavity": {"gap_um": -1}})").find("cavity.gap_um"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"mode": "ideal", "cavity": {"gap_um": 1, "colour": 2}})")
                .find("cavity.colour: unknown field"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"mode": "lifshitz", "cavity": {"gap_um": 1}})")
                .find("cavity.eps: missing required field"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"mode": "ideal", "cavity": {"gap_um": 1},
                         "quadrature": {"rel_tol": 2}})")
                .find("quadrature.rel_tol"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"mode": "sweep", "cavity": {"gap_um": 1},
                         "sweep": {"variable": "chi", "start": 0, "stop": 1, "points": 1}})")
                .find("sweep.points"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"mode": "warp", "cavity": {"gap_um": 1}})").find("mode"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"mode": "ideal", "cavity": {}})").find("cavity.gap_um"),
            std::string::npos);
  EXPECT_NE(error_of("{not json").find("<document>"), std::string::npos);
}

TEST(ParseConfig, ModeFixesTheMaterial) {
  EXPECT_NE(error_of(R"({"mode": "lifshitz", "cavity": {"gap_um": 1, "material": "ideal"}})")
                .find("cavity.material"),
            std::string::npos);
  const RunConfig t = parse_config(R"({"mode": "torque", "cavity": {"gap_um": 1}})");
  EXPECT_EQ(t.material.kind, Material::perfect_aniso);
}

TEST(ParseConfig, HashIgnoresThreadCount) {
  RunConfig a = parse_config(R"({"mode": "ideal", "cavity": {"gap_um": 1}})");
  RunConfig b = a;
  b.quadrature.threads = 7;
  EXPECT_EQ(config_hash(a), config_hash(b));
  b.gap = 2e-6;
  EXPECT_NE(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);
}

TEST(SweepSpec, LogSpacingHitsEndpoints) {
  SweepSpec s{SweepVariable::gap, 1e-7, 1e-4, 7, true};
  const std::vector<double> v = s.values();
  ASSERT_EQ(v.size(), 7u);
  EXPECT_EQ(v.front(), 1e-7);
  EXPECT_EQ(v.back(), 1e-4);
  EXPECT_NEAR(v[1] / v[0], std::pow(10.0, 0.5), 1e-12);
}

TEST(Run, IdealRowMatchesClosedForm) {
  const RunConfig c = parse_config(R"({"mode": "ideal", "cavity": {"gap_um": 1}})");
  const Table t = compute(c);
  ASSERT_EQ(t.rows.size(), 1u);
  const double a = 1e-6;
  const double expected = -pi * pi * kHbarC / (720 * a * a * a);
  EXPECT_NEAR(t.rows[0].values[2] / expected, 1.0, 1e-6);
  EXPECT_NEAR(t.rows[0].values[6], 1.0, 1e-6);
  EXPECT_EQ(t.rows[0].flag, "ok");
}

TEST(Run, PerfectAnisotropicSweepRowsInOrder) {
  const RunConfig c = parse_config(
      R"({"mode": "perfect-aniso", "cavity": {"gap_um": 1},
          "sweep": {"variable": "chi", "start": 0, "stop": 180, "points": 25},
          "output": {"units": "natural"}})");
  const Table t = compute(c);
  ASSERT_EQ(t.rows.size(), 25u);
  for (std::size_t i = 0; i < 25; ++i) {
    EXPECT_NEAR(t.rows[i].values[1], pi * static_cast<double>(i) / 24, 1e-14);
    EXPECT_EQ(t.rows[i].flag, "ok");
    EXPECT_NEAR(t.rows[i].values[6], t.rows[24 - i].values[6], 1e-8);
  }
  // Aligned plates attract more strongly than crossed ones.
  EXPECT_GT(t.rows[0].values[6], t.rows[12].values[6]);
}

TEST(Run, FiniteSweepComparesWithInfinitePlates) {
  const RunConfig c = parse_config(
      R"({"mode": "finite", "cavity": {"half_side_um": 5},
          "sweep": {"variable": "a", "start": 0.1, "stop": 100, "points": 7, "spacing": "log"}})");
  const Table t = compute(c);
  ASSERT_EQ(t.rows.size(), 7u);
  for (const Row& r : t.rows) {
    EXPECT_NEAR(r.values[3] / r.values[5], r.values[6], 1e-12);
    EXPECT_LT(r.values[6], 1.0);
  }
  // Shrinking the gap relative to the plate raises the efficiency.
  EXPECT_GT(t.rows.front().values[6], t.rows.back().values[6]);
}

TEST(Run, CsvIsIdenticalAcrossThreadCounts) {
  RunConfig c = parse_config(
      R"({"mode": "uniaxial", "cavity": {"gap_um": 1, "eps_par": 2, "eps_perp": 9},
          "sweep": {"variable": "chi", "start": 0, "stop": 90, "points": 4}})");
  c.quadrature.threads = 1;
  const std::string one = csv(c);
  c.quadrature.threads = 3;
  EXPECT_EQ(one, csv(c));
  c.sweep.reset();
  c.quadrature.threads = 1;
  const std::string single = csv(c);
  c.quadrature.threads = 4;
  EXPECT_EQ(single, csv(c));
}

TEST(Run, CsvHeaderAndSignificantDigits) {
  const RunConfig c = parse_config(R"({"mode": "ideal", "cavity": {"gap_um": 1}})");
  const std::string text = csv(c);
  EXPECT_NE(text.find("# config_hash: fnv1a64:" + config_hash(c)), std::string::npos);
  EXPECT_NE(text.find("# mode: ideal"), std::string::npos);
  EXPECT_NE(text.find("# units: si"), std::string::npos);
  EXPECT_NE(text.find("# rel_tol: 1e-06"), std::string::npos);
  EXPECT_NE(text.find("# columns: gap_um chi_rad"), std::string::npos);
  const std::vector<std::string> lines = data_lines(text);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0].substr(0, 15), "gap_um,chi_rad,");
  // Every value parses back to the double that was written.
  std::istringstream row(lines[1]);
  std::string field;
  std::getline(row, field, ',');
  std::getline(row, field, ',');
  std::getline(row, field, ',');
  const double e = std::stod(field);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", e);
  EXPECT_EQ(field, buf);
}

TEST(Run, NonConvergenceAbortsRowWithoutNaN) {
  RunConfig c = parse_config(
      R"({"mode": "perfect-aniso", "cavity": {"gap_um": 1, "chi_deg": 20},
          "quadrature": {"rel_tol": 1e-14, "max_refinement_levels": 1}})");
  const Table t = compute(c);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].flag, "aborted");
  EXPECT_TRUE(t.computational_error);
  std::ostringstream os;
  write_csv(os, c, t);
  EXPECT_EQ(os.str().find("nan"), std::string::npos);
  EXPECT_NE(os.str().find("# row 0 aborted"), std::string::npos);

  const auto path = std::filesystem::temp_directory_path() / "casimir_cli_abort.csv";
  c.output.path = path.string();
  std::ostringstream log;
  EXPECT_EQ(run(c, log), kComputeError);
  EXPECT_NE(log.str().find("aborted at"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Run, UnwritablePathIsIoError) {
  RunConfig c = parse_config(R"({"mode": "ideal", "cavity": {"gap_um": 1}})");
  c.output.path = "/nonexistent-dir/out.csv";
  std::ostringstream log;
  EXPECT_EQ(run(c, log), kIoError);
}

TEST(Run, JsonOutputCarriesTheSameContent) {
  RunConfig c = parse_config(
      R"({"mode": "finite", "cavity": {"gap_um": 1, "half_side_um": 5},
          "output": {"format": "json"}})");
  const Table t = compute(c);
  std::ostringstream os;
  write_json(os, c, t);
  const json doc = json::parse(os.str());
  EXPECT_EQ(doc["config_hash"], "fnv1a64:" + config_hash(c));
  EXPECT_EQ(doc["mode"], "finite");
  ASSERT_EQ(doc["rows"].size(), 1u);
  EXPECT_EQ(doc["rows"][0]["flag"], "ok");
  EXPECT_NEAR(doc["rows"][0]["eta"].get<double>(), t.rows[0].values[6], 0.0);
  EXPECT_EQ(from_json(doc["config"]).half_side, c.half_side);
}

}  // namespace
