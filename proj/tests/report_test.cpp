#include <sstream>

#include <gtest/gtest.h>

#include "conelab/error.hpp"
#include "conelab/report.hpp"

using namespace conelab;
using nlohmann::json;

namespace {

ExperimentConfig small_sweep() {
  ExperimentConfig c;
  c.command = "sweep";
  c.suite = "sweep";
  c.n = 3;
  c.qs = {3, 5};
  c.exp_r = Rational(4);
  c.trials = 5;
  c.seed = 9;
  return c;
}

json without_timing(json j) {
  j.erase("timing");
  return j;
}

}  // namespace

TEST(Config, ReadsEveryKey) {
  const json j = json::parse(R"({
    "command": "sweep", "suite": "sweep", "field": {"p": 3, "ell": 2, "modulus": [1, 0, 1]},
    "n": 4, "d": 3, "k": 2, "q": [3, 7], "exponent_p": "2", "r": "10/3",
    "families": ["constant", "omega"], "expect": "bounded", "trials": 7, "seed": 5,
    "budget": 1000000, "instance": "x.json", "out": "r.json"})");
  const auto c = config_from_json(j);
  EXPECT_EQ(c.p, 3);
  EXPECT_EQ(c.ell, 2);
  EXPECT_EQ(c.modulus, (std::vector<int>{1, 0, 1}));
  EXPECT_TRUE(c.field_given);
  EXPECT_EQ(c.n, 4);
  EXPECT_EQ(c.d, 3);
  EXPECT_EQ(c.k, 2);
  EXPECT_EQ(c.qs, (std::vector<std::uint32_t>{3, 7}));
  EXPECT_EQ(c.exp_r, Rational(10, 3));
  EXPECT_EQ(c.families, (std::vector<Family>{Family::constant, Family::omega}));
  EXPECT_EQ(c.expect, "bounded");
  EXPECT_EQ(c.trials, 7);
  EXPECT_EQ(c.seed, 5u);
  EXPECT_EQ(c.budget, 1000000u);
  EXPECT_EQ(c.instance_path, "x.json");
  EXPECT_EQ(c.output_path, "r.json");
}

TEST(Config, RoundTrips) {
  auto c = small_sweep();
  c.families = {Family::gamma, Family::singleton};
  const auto back = config_from_json(config_to_json(c));
  EXPECT_EQ(config_to_json(back), config_to_json(c));
}

TEST(Config, KeepsBaseForMissingKeys) {
  ExperimentConfig base;
  base.seed = 77;
  const auto c = config_from_json(json::parse(R"({"n": 5})"), base);
  EXPECT_EQ(c.seed, 77u);
  EXPECT_EQ(c.n, 5);
}

TEST(Config, RejectsBadInput) {
  for (const char* text : {R"({"bogus": 1})", R"({"r": "abc"})", R"({"r": 2.5})", R"({"exponent_p": "1/2"})",
                           R"({"trials": 0})", R"({"budget": 0})", R"({"expect": "maybe"})",
                           R"({"families": ["nope"]})", R"({"n": "four"})", R"({"field": {"ell": 2}})", "[1, 2]"}) {
    EXPECT_THROW(config_from_json(json::parse(text)), ConfigError) << text;
  }
}

TEST(Report, SchemaKeys) {
  const auto rep = run_suite([] {
    ExperimentConfig c;
    c.suite = "gauss";
    return c;
  }());
  const auto j = report_to_json(rep);
  for (const char* key : {"schema_version", "suite", "config", "checks", "constants", "sweeps", "data",
                          "budget_exceeded", "status", "timing"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["schema_version"], kReportSchemaVersion);
  EXPECT_EQ(j["status"], "pass");
  ASSERT_FALSE(j["checks"].empty());
  for (const auto& ch : j["checks"]) {
    for (const char* key : {"name", "lhs", "rhs", "relation", "ratio", "pass"}) EXPECT_TRUE(ch.contains(key)) << key;
  }
  EXPECT_EQ(exit_code(rep), 0);
}

TEST(Report, ExitCodes) {
  Report r;
  EXPECT_EQ(exit_code(r), 0);
  r.add("ok", 1, 2, true);
  EXPECT_EQ(exit_code(r), 0);
  r.add("bad", 3, 2, false);
  EXPECT_EQ(exit_code(r), 1);
  EXPECT_EQ(report_to_json(r)["status"], "fail");
  r.budget_exceeded = true;
  EXPECT_EQ(exit_code(r), 3);
  EXPECT_EQ(report_to_json(r)["status"], "budget-exceeded");
}

TEST(Report, BudgetGivesPartialReport) {
  ExperimentConfig c;
  c.suite = "cone-ift";
  c.p = 3;
  c.field_given = true;
  c.n = 8;
  c.budget = 1000;
  const auto rep = run_suite(c);
  EXPECT_TRUE(rep.budget_exceeded);
  EXPECT_EQ(exit_code(rep), 3);
}

TEST(Report, UnknownSuite) {
  ExperimentConfig c;
  c.suite = "nope";
  EXPECT_THROW(run_suite(c), ConfigError);
}

TEST(Report, SweepIsDeterministic) {
  const auto a = report_to_json(run_sweep(small_sweep()));
  const auto b = report_to_json(run_sweep(small_sweep()));
  EXPECT_EQ(without_timing(a).dump(), without_timing(b).dump());
  ASSERT_EQ(a["sweeps"].size(), 1u);
  EXPECT_EQ(a["sweeps"][0]["per_q"].size(), 2u);
}

TEST(Plot, HeaderAndRows) {
  auto c = small_sweep();
  c.families = {Family::constant, Family::omega};
  const auto j = report_to_json(run_sweep(c));
  std::ostringstream out;
  write_plot_csv(j, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "q,max_ratio,constant,omega");
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].substr(0, 2), "3,");
  EXPECT_EQ(rows[1].substr(0, 2), "5,");
  EXPECT_EQ(std::count(rows[0].begin(), rows[0].end(), ','), 3);
}

TEST(Plot, EmptySweepGivesHeaderOnly) {
  SweepReport s;
  s.config.families = {Family::constant};
  Report r;
  r.sweeps.push_back(s);
  std::ostringstream out;
  write_plot_csv(report_to_json(r), out);
  EXPECT_EQ(out.str(), "q,max_ratio,constant\n");
}

TEST(Plot, NeedsASweep) {
  std::ostringstream out;
  EXPECT_THROW(write_plot_csv(report_to_json(Report{}), out), ConfigError);
  EXPECT_THROW(write_plot_csv(json::array(), out), ConfigError);
  Report r;
  r.sweeps.emplace_back();
  EXPECT_THROW(write_plot_csv(report_to_json(r), out, 1), ConfigError);
}
