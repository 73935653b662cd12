// conelab: run verification suites, restriction sweeps and plot export.
//
//   conelab verify <suite> [--p 3 --n 4 ...]
//   conelab sweep --n 4 --p 2 --r 3/1 --q 3,7,11 --trials 200 --seed 42
//   conelab export-plot report.json [--out plot.csv]
//
// Exit status: 0 all checks pass, 1 a check failed, 2 configuration error,
// 3 budget exceeded (the partial report is still written).

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "conelab/error.hpp"
#include "conelab/report.hpp"

using namespace conelab;
using nlohmann::json;

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void emit(const std::string& text, const std::optional<std::string>& path) {
  if (!path) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(*path);
  if (!out) throw ConfigError("cannot write " + *path);
  out << text << '\n';
}

// Raw flag values; applied over the config file so flags win.
struct Flags {
  std::optional<std::string> config;
  std::optional<int> p, ell, n, d, k, trials;
  std::string modulus;
  std::string qs;
  std::optional<std::string> exp_p, r, expect, instance, out;
  std::string families;
  std::optional<std::uint64_t> seed, budget;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

long long to_int(const std::string& s) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw ConfigError("not an integer: " + s);
    return v;
  } catch (const std::logic_error&) {
    throw ConfigError("not an integer: " + s);
  }
}

ExperimentConfig build(const Flags& f, ExperimentConfig c, bool p_is_exponent) {
  if (f.config) c = config_from_json(load_json(*f.config), c);
  json j = json::object();
  if (f.p && !p_is_exponent) {
    j["field"] = {{"p", *f.p}, {"ell", f.ell.value_or(1)}};
    if (!f.modulus.empty()) {
      std::vector<int> m;
      for (const auto& s : split(f.modulus)) m.push_back(static_cast<int>(to_int(s)));
      j["field"]["modulus"] = m;
    }
  }
  if (f.p && p_is_exponent) j["exponent_p"] = std::to_string(*f.p);
  if (f.exp_p) j["exponent_p"] = *f.exp_p;
  if (f.r) j["r"] = *f.r;
  if (f.n) j["n"] = *f.n;
  if (f.d) j["d"] = *f.d;
  if (f.k) j["k"] = *f.k;
  if (f.trials) j["trials"] = *f.trials;
  if (f.seed) j["seed"] = *f.seed;
  if (f.budget) j["budget"] = *f.budget;
  if (f.expect) j["expect"] = *f.expect;
  if (f.instance) j["instance"] = *f.instance;
  if (f.out) j["out"] = *f.out;
  if (!f.qs.empty()) {
    std::vector<std::uint32_t> qs;
    for (const auto& s : split(f.qs)) {
      const long long v = to_int(s);
      if (v < 3) throw ConfigError("field orders must be odd prime powers");
      qs.push_back(static_cast<std::uint32_t>(v));
    }
    j["q"] = qs;
  }
  if (!f.families.empty()) j["families"] = split(f.families);
  return config_from_json(j, c);
}

void common_flags(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "JSON config file (flags override its keys)");
  app->add_option("--n", f.n, "cone dimension");
  app->add_option("--r", f.r, "exponent r as a/b, an integer or inf");
  app->add_option("--q", f.qs, "comma-separated field orders");
  app->add_option("--families", f.families, "comma-separated test families");
  app->add_option("--expect", f.expect, "bounded or growing");
  app->add_option("--trials", f.trials, "trials per q / per size");
  app->add_option("--seed", f.seed, "random seed");
  app->add_option("--budget", f.budget, "largest grid any step may touch");
  app->add_option("--out", f.out, "write the report here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-field cone restriction and point-sphere incidence lab"};
  app.require_subcommand(1);

  Flags vf;
  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "gauss | cone-ift | restriction-sweep | l2-char | necessary | incidence | sharp | all")
      ->required();
  common_flags(verify, vf);
  verify->add_option("--p", vf.p, "field characteristic");
  verify->add_option("--ell", vf.ell, "extension degree");
  verify->add_option("--modulus", vf.modulus, "irreducible modulus, low degree first, comma-separated");
  verify->add_option("--d", vf.d, "ambient dimension of points and spheres");
  verify->add_option("--k", vf.k, "sharp family index");
  verify->add_option("--exp-p", vf.exp_p, "exponent p as a/b");
  verify->add_option("--instance", vf.instance, "incidence instance JSON");

  Flags sf;
  auto* sweep = app.add_subcommand("sweep", "restriction sweep over a list of q");
  common_flags(sweep, sf);
  sweep->add_option("--p", sf.exp_p, "exponent p as a/b");

  std::string report_path;
  std::optional<std::string> plot_out;
  std::size_t sweep_index = 0;
  auto* plot = app.add_subcommand("export-plot", "CSV of (q, max ratio) from a sweep report");
  plot->add_option("report", report_path, "report JSON")->required();
  plot->add_option("--out", plot_out, "CSV path (stdout if omitted)");
  plot->add_option("--sweep", sweep_index, "which sweep of the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*plot) {
      std::ostringstream csv;
      write_plot_csv(load_json(report_path), csv, sweep_index);
      if (plot_out) {
        std::ofstream out(*plot_out);
        if (!out) throw ConfigError("cannot write " + *plot_out);
        out << csv.str();
      } else {
        std::cout << csv.str();
      }
      return 0;
    }
    Report rep;
    if (*verify) {
      ExperimentConfig base;
      base.command = "verify";
      base.suite = suite;
      ExperimentConfig c = build(vf, base, false);
      c.suite = suite;
      rep = run_suite(c);
    } else {
      ExperimentConfig base;
      base.command = "sweep";
      base.suite = "sweep";
      rep = run_sweep(build(sf, base, true));
    }
    emit(report_to_json(rep).dump(2), rep.config.output_path);
    for (const auto& ch : rep.checks) {
      if (!ch.pass) std::cerr << "FAIL " << ch.name << ": " << ch.lhs << ' ' << ch.relation << ' ' << ch.rhs << '\n';
    }
    if (rep.budget_exceeded) std::cerr << "budget exceeded: " << rep.budget_message << '\n';
    return exit_code(rep);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 3;
  }
}
