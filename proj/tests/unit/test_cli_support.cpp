#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "qif/config.hpp"
#include "qif/errors.hpp"
#include "qif/runner.hpp"
#include "qif/table.hpp"

using namespace qif;
using namespace qif::cli;

namespace {

int error_line(std::string_view text, const Overrides& overrides = {}) {
  try {
    parse_config(text, overrides);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

std::string error_message(std::string_view text, const Overrides& overrides = {}) {
  try {
    parse_config(text, overrides);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(ParseConfig, ReferencePoint) {
  const auto cfg = parse_config("mode=distributions\ndelta_over_w=0.3\nphi=2.35619449\nalpha=0");
  EXPECT_EQ(cfg.mode, Mode::distributions);
  EXPECT_EQ(cfg.delta_over_w, 0.3);
  EXPECT_EQ(cfg.phi, 2.35619449);
  EXPECT_EQ(cfg.alpha, 0.0);
  EXPECT_NEAR(cfg.r, std::numbers::sqrt2 / 2, 1e-16);
}

TEST(ParseConfig, EmptyDocumentListsRequiredKeys) {
  const std::string msg = error_message("");
  EXPECT_NE(msg.find("missing required keys"), std::string::npos);
  EXPECT_NE(msg.find("mode"), std::string::npos);
  const std::string per_mode = error_message("mode = ports\n");
  EXPECT_NE(per_mode.find("delta_over_w"), std::string::npos);
  EXPECT_NE(per_mode.find("phi"), std::string::npos);
  EXPECT_NE(per_mode.find("alpha"), std::string::npos);
}

TEST(ParseConfig, PiSuffix) {
  EXPECT_NEAR(parse_real("0.75pi", true), 2.35619449, 1e-8);
  EXPECT_EQ(parse_real("pi", true), std::numbers::pi);
  EXPECT_EQ(parse_real("-pi", true), -std::numbers::pi);
  EXPECT_EQ(parse_real("2pi", true), 2 * std::numbers::pi);
  EXPECT_THROW(parse_real("0.3pi", false), ConfigError);
  EXPECT_THROW(parse_real("0.3x", true), ConfigError);
  EXPECT_THROW(parse_real("", true), ConfigError);
  EXPECT_THROW(parse_real("nan", true), ConfigError);
  const auto cfg = parse_config("mode = ports\ndelta_over_w = 0.3\nphi = 0.75pi\nalpha = 0 # no phase\n");
  EXPECT_NEAR(cfg.phi, 2.35619449, 1e-8);
}

TEST(ParseConfig, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("mode = ports\n# comment\nbogus = 1\n"), 3);
  EXPECT_EQ(error_line("mode = ports\ndelta_over_w = abc\nphi=0\nalpha=0\n"), 2);
  EXPECT_EQ(error_line("mode = ports\ndelta_over_w = 0.3\nphi=0\nalpha=0\nr = 1.5\n"), 5);
  EXPECT_EQ(error_line("mode = ports\nmode = sweep\n"), 2);
  EXPECT_EQ(error_line("mode = ports\njust text\n"), 2);
  EXPECT_EQ(error_line("mode = sweep\nphi_steps = 1\n"), 2);
  EXPECT_EQ(error_line("mode = sweep\nphi_min = 1\nphi_max = 0.5\n"), 3);
  EXPECT_EQ(error_line("mode = sweep\ngrid_points = 100\n"), 2);
  EXPECT_EQ(error_line("mode = warp\n"), 1);
  EXPECT_EQ(error_line("mode = ports\ndelta_over_w = 0.3pi\nphi=0\nalpha=0\n"), 2);
  EXPECT_EQ(error_line("mode = design\nd_m=-1\nlength_m=1\nspeed_m_per_s=1\ndx0_transverse_m=1\ndx0_longitudinal_m=1\n"), 2);
}

TEST(ParseConfig, OverridesWin) {
  const auto cfg = parse_config("mode = ports\ndelta_over_w = 0.3\nphi = 0\nalpha = 0\n",
                                {{"delta-over-w", "0.5"}, {"format", "json"}, {"out", "x.json"}});
  EXPECT_EQ(cfg.delta_over_w, 0.5);
  EXPECT_EQ(cfg.format, Format::json);
  EXPECT_EQ(cfg.out, "x.json");
  EXPECT_EQ(error_line("", {{"mode", "sweep"}, {"nonsense", "1"}}), 0);
  EXPECT_EQ(parse_config("", {{"mode", "verify"}}).mode, Mode::verify);
}

TEST(ParseConfig, DesignTuneOptions) {
  const std::string base =
      "mode = design\nd_m = 2e-3\nlength_m = 4e-2\nspeed_m_per_s = 2e6\ndx0_transverse_m = 1e-5\n"
      "dx0_longitudinal_m = 2e-7\n";
  EXPECT_FALSE(parse_config(base).tune.multiple.has_value());
  EXPECT_FALSE(parse_config(base + "tune = nearest\n").tune.multiple.has_value());
  EXPECT_EQ(parse_config(base + "tune = 4\n").tune.multiple, 4);
  EXPECT_EQ(error_line(base + "tune = 0\n"), 7);
}

TEST(WriteTable, CsvLayout) {
  Table t;
  t.columns = {"a_over_W", "b_over_W"};
  t.add_row({1.0, 0.5});
  t.add_row({-2.0, Cell()});
  EXPECT_EQ(render_table(t, Format::csv),
            "a_over_W,b_over_W\n1.0000000000000000e+00,5.0000000000000000e-01\n"
            "-2.0000000000000000e+00,\n");
  EXPECT_THROW(t.add_row({1.0}), InvalidArgument);
}

TEST(WriteTable, JsonLayout) {
  Table t;
  t.columns = {"port", "probability"};
  t.add_row({std::string("DC"), 0.25});
  t.add_row({std::string("CC"), Cell()});
  const std::string json = render_table(t, Format::json);
  EXPECT_NE(json.find("\"port\": \"DC\""), std::string::npos);
  EXPECT_NE(json.find("\"probability\": 0.25"), std::string::npos);
  EXPECT_NE(json.find("\"probability\": null"), std::string::npos);
  EXPECT_LT(json.find("\"port\""), json.find("\"probability\""));
}

TEST(WriteTable, FileRoundTripAndUnwritablePath) {
  Table t;
  t.columns = {"x_over_W"};
  t.add_row({3.0});
  const auto path = std::filesystem::temp_directory_path() / "qif_table_test.csv";
  write_table(t, Format::csv, path);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), render_table(t, Format::csv));
  std::filesystem::remove(path);
  EXPECT_THROW(write_table(t, Format::csv, "/nonexistent-dir/x.csv"), Error);
}

TEST(Execute, DistributionsSummaryReportsBothForms) {
  const auto result = execute(parse_config("mode=distributions\ndelta_over_w=0.3\nphi=0.75pi\nalpha=0\n"));
  ASSERT_EQ(result.table.columns, (std::vector<std::string>{"p_over_W", "P1", "P2"}));
  EXPECT_EQ(result.table.rows.size(), 801u);
  std::string all;
  for (const auto& l : result.summary) all += l + "\n";
  EXPECT_NE(all.find("+0.356704"), std::string::npos);
  EXPECT_NE(all.find("+0.489654"), std::string::npos);
  EXPECT_NE(all.find("difference"), std::string::npos);
}

TEST(Execute, DarkPortRaises) {
  EXPECT_THROW(execute(parse_config("mode=distributions\ndelta_over_w=0\nphi=pi\nalpha=0\n")), ZeroProbability);
  // Transparent splitters leave only CD bright; the other means are empty cells.
  const auto ports = execute(parse_config("mode=ports\ndelta_over_w=0\nphi=pi\nalpha=0\nr=0\n"));
  EXPECT_TRUE(std::holds_alternative<std::monostate>(ports.table.rows[2][2]));
  EXPECT_TRUE(std::holds_alternative<double>(ports.table.rows[1][2]));
}

TEST(Execute, PortsTable) {
  const auto result = execute(parse_config("mode=ports\ndelta_over_w=0.3\nphi=0.75pi\nalpha=0\n"));
  ASSERT_EQ(result.table.rows.size(), 6u);
  EXPECT_EQ(std::get<std::string>(result.table.rows[4][0]), "weighted_total");
  EXPECT_NEAR(std::get<double>(result.table.rows[4][2]), -0.15, 1e-12);
  EXPECT_NEAR(std::get<double>(result.table.rows[5][2]), -0.15, 1e-15);
}

TEST(Execute, SweepShape) {
  const auto result = execute(parse_config("mode=sweep\n"));
  EXPECT_EQ(result.table.rows.size(), 101u * 101u);
  EXPECT_EQ(result.table.columns.size(), 4u);
  for (const auto& c : result.table.columns) {
    EXPECT_TRUE(c.ends_with("_over_W") || c.ends_with("_rad")) << c;
  }
  const auto small = execute(parse_config("mode=sweep\ndelta_over_w_steps=3\nphi_steps=2\n"));
  EXPECT_EQ(small.table.rows.size(), 6u);
}

TEST(Execute, DeterministicOutput) {
  const auto cfg = parse_config("mode=decompose\ndelta_over_w=0.3\nphi=0.75pi\nalpha=0\n");
  EXPECT_EQ(render_table(execute(cfg).table, Format::csv), render_table(execute(cfg).table, Format::csv));
  EXPECT_EQ(render_table(execute(cfg).table, Format::json), render_table(execute(cfg).table, Format::json));
}
