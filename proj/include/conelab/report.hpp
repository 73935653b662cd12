#pragma once

// Experiment configuration, the verification suites behind the command line
// and the JSON report they produce. Report layout is described in
// docs/report-schema.md.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "conelab/rational.hpp"
#include "conelab/restriction.hpp"

namespace conelab {

inline constexpr int kReportSchemaVersion = 1;

struct ExperimentConfig {
  std::string command = "verify";
  std::string suite = "all";
  // field
  int p = 3;
  int ell = 1;
  std::vector<int> modulus;
  bool field_given = false;  // p/ell were set explicitly
  // dimensions
  std::optional<int> n;
  std::optional<int> d;
  int k = 1;
  std::vector<std::uint32_t> qs;
  // exponents
  Rational exp_p{2};
  Rational exp_r{3};
  std::vector<Family> families = all_families();
  std::optional<std::string> expect;  // bounded | growing, for a single sweep
  std::optional<int> trials;  // each suite has its own default
  std::uint64_t seed = 42;
  std::uint64_t budget = kDefaultBudget;
  std::optional<std::string> instance_path;
  std::optional<std::string> output_path;
};

// Reads the keys of a JSON config object over `base`. Keys mirror the long
// command-line flags; exponents are strings such as "10/3".
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});
nlohmann::json config_to_json(const ExperimentConfig& c);

struct Check {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
  std::string relation = "<=";  // how lhs is compared with rhs
};

struct Report {
  std::string suite;
  ExperimentConfig config;
  std::vector<Check> checks;
  nlohmann::json constants = nlohmann::json::object();  // empirical constants by name
  std::vector<SweepReport> sweeps;
  nlohmann::json data = nlohmann::json::object();       // suite-specific extras
  bool budget_exceeded = false;
  std::string budget_message;
  double seconds = 0.0;

  bool passed() const;
  void add(std::string name, double lhs, double rhs, bool pass, std::string relation = "<=");
};

nlohmann::json sweep_to_json(const SweepReport& s);
nlohmann::json report_to_json(const Report& r);

// Exit status: 0 all checks pass, 1 some check failed, 3 budget exceeded.
int exit_code(const Report& r);

// Plot rows from report JSON: header "q,max_ratio,<family>..." and one row per q
// of the chosen sweep. Throws ConfigError when the report holds no sweep.
void write_plot_csv(const nlohmann::json& report, std::ostream& out, std::size_t sweep_index = 0);

// gauss | cone-ift | restriction-sweep | l2-char | necessary | incidence | sharp | all
const std::vector<std::string>& suite_names();
Report run_suite(const ExperimentConfig& config);
// Plain sweep over config.qs (no expectation unless config.expect is set).
Report run_sweep(const ExperimentConfig& config);

}  // namespace conelab
