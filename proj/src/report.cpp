#include "conelab/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "conelab/characters.hpp"
#include "conelab/cone.hpp"
#include "conelab/constructions.hpp"
#include "conelab/error.hpp"
#include "conelab/incidence.hpp"

namespace conelab {

using nlohmann::json;

// --- configuration ---

namespace {

Rational rational_from(const json& v) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  throw ConfigError("exponents must be given as strings such as \"10/3\" or integers");
}

}  // namespace

ExperimentConfig config_from_json(const json& j, ExperimentConfig c) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known = {"command", "suite", "field", "n", "d", "k", "q", "exponent_p", "r",
                                              "families", "expect", "trials", "seed", "budget", "instance", "out"};
  try {
    for (const auto& [key, value] : j.items()) {
      if (!known.contains(key)) throw ConfigError("unknown config key '" + key + "'");
    }
    if (j.contains("command")) c.command = j["command"].get<std::string>();
    if (j.contains("suite")) c.suite = j["suite"].get<std::string>();
    if (j.contains("field")) {
      const auto& f = j["field"];
      c.p = f.at("p").get<int>();
      c.ell = f.value("ell", 1);
      c.modulus = f.value("modulus", std::vector<int>{});
      c.field_given = true;
    }
    if (j.contains("n")) c.n = j["n"].get<int>();
    if (j.contains("d")) c.d = j["d"].get<int>();
    if (j.contains("k")) c.k = j["k"].get<int>();
    if (j.contains("q")) c.qs = j["q"].get<std::vector<std::uint32_t>>();
    if (j.contains("exponent_p")) c.exp_p = rational_from(j["exponent_p"]);
    if (j.contains("r")) c.exp_r = rational_from(j["r"]);
    if (j.contains("families")) {
      c.families.clear();
      for (const auto& f : j["families"]) c.families.push_back(parse_family(f.get<std::string>()));
    }
    if (j.contains("expect")) c.expect = j["expect"].get<std::string>();
    if (j.contains("trials")) c.trials = j["trials"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("budget")) c.budget = j["budget"].get<std::uint64_t>();
    if (j.contains("instance")) c.instance_path = j["instance"].get<std::string>();
    if (j.contains("out")) c.output_path = j["out"].get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (c.budget == 0) throw ConfigError("budget must be positive");
  if (c.trials && *c.trials < 1) throw ConfigError("trials must be positive");
  if (c.expect && *c.expect != "bounded" && *c.expect != "growing") {
    throw ConfigError("expect must be 'bounded' or 'growing'");
  }
  if (c.exp_p < Rational(1) || c.exp_r < Rational(1)) throw ConfigError("exponents must be >= 1");
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["command"] = c.command;
  j["suite"] = c.suite;
  if (c.field_given) j["field"] = {{"p", c.p}, {"ell", c.ell}, {"modulus", c.modulus}};
  if (c.n) j["n"] = *c.n;
  if (c.d) j["d"] = *c.d;
  j["k"] = c.k;
  if (!c.qs.empty()) j["q"] = c.qs;
  j["exponent_p"] = c.exp_p.str();
  j["r"] = c.exp_r.str();
  j["families"] = json::array();
  for (auto f : c.families) j["families"].push_back(family_name(f));
  if (c.expect) j["expect"] = *c.expect;
  if (c.trials) j["trials"] = *c.trials;
  j["seed"] = c.seed;
  j["budget"] = c.budget;
  if (c.instance_path) j["instance"] = *c.instance_path;
  return j;
}

// --- reports ---

bool Report::passed() const {
  return !budget_exceeded && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void Report::add(std::string name, double lhs, double rhs, bool pass, std::string relation) {
  checks.push_back({std::move(name), lhs, rhs, pass, std::move(relation)});
}

json sweep_to_json(const SweepReport& s) {
  json j;
  j["n"] = s.config.n;
  j["p"] = s.config.p.str();
  j["r"] = s.config.r.str();
  j["seed"] = s.config.seed;
  j["trials"] = s.config.trials;
  j["families"] = json::array();
  for (auto f : s.config.families) j["families"].push_back(family_name(f));
  j["per_q"] = json::array();
  for (const auto& r : s.per_q) {
    json row;
    row["q"] = r.q;
    row["max_ratio"] = r.max_ratio;
    row["argmax"] = {{"family", family_name(r.argmax.family)}, {"trial", r.argmax.trial},
                     {"support", r.argmax.support}};
    row["cap"] = r.cap;
    row["evaluated"] = r.evaluated;
    row["family_max"] = json::object();
    for (const auto& [f, v] : r.family_max) row["family_max"][family_name(f)] = v;
    j["per_q"].push_back(row);
  }
  j["slope"] = s.slope;
  j["family_slope"] = json::object();
  for (const auto& [f, v] : s.family_slope) j["family_slope"][family_name(f)] = v;
  j["verdict"] = s.verdict;
  return j;
}

json report_to_json(const Report& r) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["suite"] = r.suite;
  j["config"] = config_to_json(r.config);
  j["checks"] = json::array();
  for (const auto& c : r.checks) {
    j["checks"].push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"relation", c.relation},
                           {"ratio", c.rhs != 0.0 ? c.lhs / c.rhs : 0.0}, {"pass", c.pass}});
  }
  j["constants"] = r.constants;
  j["sweeps"] = json::array();
  for (const auto& s : r.sweeps) j["sweeps"].push_back(sweep_to_json(s));
  j["data"] = r.data;
  j["budget_exceeded"] = r.budget_exceeded;
  if (r.budget_exceeded) j["budget_message"] = r.budget_message;
  j["status"] = r.budget_exceeded ? "budget-exceeded" : r.passed() ? "pass" : "fail";
  j["timing"] = {{"seconds", r.seconds}};
  return j;
}

int exit_code(const Report& r) {
  if (r.budget_exceeded) return 3;
  return r.passed() ? 0 : 1;
}

void write_plot_csv(const json& report, std::ostream& out, std::size_t sweep_index) {
  if (!report.is_object() || !report.contains("sweeps") || !report["sweeps"].is_array() ||
      report["sweeps"].empty()) {
    throw ConfigError("plot export needs a report containing a sweep");
  }
  if (sweep_index >= report["sweeps"].size()) throw ConfigError("plot export: sweep index out of range");
  const auto& s = report["sweeps"][sweep_index];
  std::vector<std::string> fams;
  for (const auto& f : s.at("families")) fams.push_back(f.get<std::string>());
  out << "q,max_ratio";
  for (const auto& f : fams) out << ',' << f;
  out << '\n';
  out.precision(17);
  for (const auto& row : s.at("per_q")) {
    out << row.at("q").get<std::uint32_t>() << ',' << row.at("max_ratio").get<double>();
    for (const auto& f : fams) {
      out << ',';
      if (row.at("family_max").contains(f)) out << row["family_max"][f].get<double>();
    }
    out << '\n';
  }
}

// --- suites ---

namespace {

std::string qn(std::uint32_t q, int n) { return "q=" + std::to_string(q) + ",n=" + std::to_string(n); }

Field field_of(const ExperimentConfig& c) {
  try {
    return Field::make(c.p, c.ell, c.modulus);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("field: ") + e.what());
  }
}

int trials_or(const ExperimentConfig& c, int fallback) { return c.trials.value_or(fallback); }

std::mt19937_64 suite_rng(const ExperimentConfig& c, std::uint32_t salt_a, std::uint32_t salt_b) {
  std::seed_seq seq{static_cast<std::uint32_t>(c.seed), static_cast<std::uint32_t>(c.seed >> 32), salt_a, salt_b};
  return std::mt19937_64(seq);
}

void suite_gauss(const ExperimentConfig& c, Report& rep) {
  std::vector<Field> fields;
  if (c.field_given) {
    fields.push_back(field_of(c));
  } else {
    for (auto [p, ell] : {std::pair{3, 1}, std::pair{5, 1}, std::pair{7, 1}, std::pair{11, 1}, std::pair{3, 2},
                          std::pair{3, 3}, std::pair{5, 2}}) {
      fields.push_back(Field::of_order(static_cast<std::uint32_t>(std::pow(p, ell))));
    }
  }
  for (const auto& F : fields) {
    const auto g = gauss_sum(F, F.one());
    const double sq = std::sqrt(static_cast<double>(F.q()));
    rep.add("gauss/closed-form/" + F.name(), std::abs(g.value - g.closed_form) / sq, 1e-9,
            std::abs(g.value - g.closed_form) / sq <= 1e-9);
    double worst = 0.0;
    for (std::uint32_t a = 1; a < F.q(); ++a) {
      const auto ga = gauss_sum(F, Scalar{a});
      worst = std::max(worst, std::abs(ga.value - ga.closed_form) / sq);
    }
    rep.add("gauss/twisted/" + F.name(), worst, 1e-9, worst <= 1e-9);
  }
  if (!c.field_given) {
    const Field A = Field::make(3, 2, {1, 0, 1});
    const Field B = Field::make(3, 2, {2, 1, 1});
    const double diff = std::abs(gauss_sum(A, A.one()).value - gauss_sum(B, B.one()).value);
    rep.add("gauss/modulus-independence/F9", diff, 1e-12, diff <= 1e-12);
  }
}

void suite_cone_ift(const ExperimentConfig& c, Report& rep) {
  std::vector<std::pair<Field, int>> cases;
  if (c.field_given || c.n) {
    cases.emplace_back(field_of(c), c.n.value_or(4));
  } else {
    for (auto [q, n] : {std::pair{3, 3}, std::pair{3, 4}, std::pair{5, 3}, std::pair{5, 4}, std::pair{7, 4},
                        std::pair{3, 8}}) {
      cases.emplace_back(Field::make(q), n);
    }
  }
  for (const auto& [F, n] : cases) {
    if (n < 3) throw ConfigError("cone dimension must be at least 3");
    checked_grid_size(F.q(), n, c.budget);
    const ConeVariety cone = cone_enumerate(F, n, c.budget);
    const std::string tag = qn(F.q(), n);
    const double closed = static_cast<double>(cone_cardinality(F, n));
    rep.add("cone/cardinality/" + tag, static_cast<double>(cone.size()), closed, cone.size() == closed, "==");
    double worst = 0.0;
    std::vector<double> values;
    const auto points = enumerate_points(F, n, c.budget);
    for (const auto& x : points) {
      const Complex b = cone_ift_brute(cone, x);
      worst = std::max(worst, std::abs(b - cone_ift_closed(F, x)));
      values.push_back(b.real());
    }
    rep.add("cone-ift/exhaustive/" + tag, worst, 1e-10, worst <= 1e-10);
    rep.data["points_checked"][tag] = points.size();
    if (F.q() == 3 && n == 4) {
      const std::vector<double> expected = {7.0 / 27, -2.0 / 27, 1.0 / 27};
      double off = 0.0;
      std::set<long long> hit;
      for (double v : values) {
        double best = 1.0;
        for (std::size_t k = 0; k < expected.size(); ++k) {
          if (std::abs(v - expected[k]) < 1e-9) hit.insert(static_cast<long long>(k));
          best = std::min(best, std::abs(v - expected[k]));
        }
        off = std::max(off, best);
      }
      rep.add("cone-ift/value-set/" + tag, static_cast<double>(hit.size()), 3.0, off < 1e-9 && hit.size() == 3,
              "==");
    }
  }
}

void add_sweep_checks(Report& rep, const SweepReport& s, const std::optional<std::string>& expect) {
  const std::string tag = "n=" + std::to_string(s.config.n) + ",p=" + s.config.p.str() + ",r=" + s.config.r.str();
  double worst = 0.0;
  for (const auto& r : s.per_q) worst = std::max(worst, r.max_ratio / r.cap);
  rep.add("sweep/cap/" + tag, worst, 1.0, worst <= 1.0 + 1e-12);
  if (expect == "bounded") rep.add("sweep/trend/" + tag, s.slope, kBoundedSlope, s.slope < kBoundedSlope, "<");
  if (expect == "growing") rep.add("sweep/trend/" + tag, s.slope, kGrowingSlope, s.slope > kGrowingSlope, ">");
  for (const auto& r : s.per_q) rep.constants["max_ratio/" + tag + "/q=" + std::to_string(r.q)] = r.max_ratio;
  rep.sweeps.push_back(s);
}

SweepConfig sweep_config(const ExperimentConfig& c, Rational r, std::vector<std::uint32_t> qs) {
  SweepConfig s;
  s.qs = std::move(qs);
  s.n = c.n.value_or(4);
  s.p = c.exp_p;
  s.r = r;
  s.families = c.families;
  s.trials = trials_or(c, 200);
  s.seed = c.seed;
  s.budget = c.budget;
  return s;
}

void suite_restriction_sweep(const ExperimentConfig& c, Report& rep) {
  if (!c.qs.empty()) {
    add_sweep_checks(rep, sweep_restriction(sweep_config(c, c.exp_r, c.qs)), c.expect);
    return;
  }
  // the sharp exponent and one inside the forbidden region
  const std::vector<std::uint32_t> qs = {3, 7, 11, 19};
  ExperimentConfig base = c;
  base.n = 4;
  base.exp_p = Rational(2);
  add_sweep_checks(rep, sweep_restriction(sweep_config(base, Rational(3), qs)), "bounded");
  add_sweep_checks(rep, sweep_restriction(sweep_config(base, Rational(5, 2), qs)), "growing");
}

void suite_l2_char(const ExperimentConfig& c, Report& rep) {
  const int trials = trials_or(c, 1000);
  std::vector<std::pair<Field, int>> cases;
  if (c.field_given || c.n) {
    cases.emplace_back(field_of(c), c.n.value_or(4));
  } else {
    cases.emplace_back(Field::make(3), 4);
    cases.emplace_back(Field::make(7), 4);
    const Field F = Field::make(3);
    const auto zero = l2_char_estimate(F, 4, {FPoint(4)});
    rep.add("l2-char/example/{0}", zero.m, 7.0 / 9.0, std::abs(zero.m - 7.0 / 9.0) < 1e-12 && zero.pass, "==");
    const auto all = l2_char_estimate(F, 4, enumerate_points(F, 4));
    rep.add("l2-char/example/F^4", all.m, 243.0, std::abs(all.m - 243.0) < 1e-8 && all.pass, "==");
  }
  for (const auto& [F, n] : cases) {
    L2CharLab lab(F, n, c.budget);
    const std::uint64_t size = checked_grid_size(F.q(), n, c.budget);
    std::vector<std::uint64_t> all(size);
    std::iota(all.begin(), all.end(), std::uint64_t{0});
    std::map<std::string, double> regime_const;
    for (std::uint64_t s = 1; s <= size; s *= 2) {
      auto rng = suite_rng(c, F.q(), static_cast<std::uint32_t>(s));
      double worst = 0.0;
      bool ok = true;
      for (int t = 0; t < trials; ++t) {
        std::vector<std::uint64_t> G;
        std::sample(all.begin(), all.end(), std::back_inserter(G), s, rng);
        const auto r = lab.estimate(G);
        ok &= r.pass && r.m2 <= 0.0;
        worst = std::max(worst, r.m / r.bound);
        auto& rc = regime_const[r.regime];
        rc = std::max(rc, r.m / r.regime_bound);
      }
      rep.add("l2-char/" + qn(F.q(), n) + "/size=" + std::to_string(s), worst, 1.0, ok && worst <= 1.0 + 1e-12);
    }
    for (const auto& [name, v] : regime_const) rep.constants["l2-char/" + qn(F.q(), n) + "/" + name] = v;
  }
}

int exhaustive_isotropic(const Field& F, int m, std::uint64_t budget) {
  int k = 0;
  while (find_null_system(F, m, k + 1, budget).has_value()) ++k;
  return k;
}

void suite_necessary(const ExperimentConfig& c, Report& rep) {
  for (int q : {3, 5, 7}) {
    const Field F = Field::make(q);
    for (int m = 1; m <= 4; ++m) {
      const int found = exhaustive_isotropic(F, m, c.budget);
      const int formula = isotropic_dimension(F, m);
      rep.add("isotropic/q=" + std::to_string(q) + ",m=" + std::to_string(m), found, formula, found == formula, "==");
    }
  }
  for (int q : {3, 5}) {
    const Field F = Field::make(q);
    for (int n : {4, 5}) {
      const Subspace W = omega_subspace(F, n, c.budget);
      std::size_t on = 0;
      const auto elems = W.elements(c.budget);
      for (const auto& x : elems) on += on_cone(F, x);
      rep.add("omega/in-cone/" + qn(q, n), static_cast<double>(on), static_cast<double>(elems.size()),
              on == elems.size(), "==");
      const double expected = std::pow(q, isotropic_dimension(F, n - 2) + 1);
      rep.add("omega/size/" + qn(q, n), static_cast<double>(elems.size()), expected, elems.size() == expected, "==");
    }
  }
  for (int q : {3, 7}) {
    const auto g = gamma_testset_ft_check(Field::make(q), 4, 1e-8, c.budget);
    rep.add("gamma/modulus/" + qn(q, 4), g.max_error, 1e-8, g.pass);
    rep.data["gamma"][qn(q, 4)] = {{"size", g.gamma_size}, {"expected", g.expected}, {"checked", g.checked}};
  }
  // witness growth at the critical exponent and inside the forbidden region (reported, not asserted)
  const std::vector<std::uint32_t> qs = {3, 7, 11, 19};
  const Field F3 = Field::make(3);
  const double r_min = necessary_r_min(F3, 4, Rational(2));
  rep.data["r_min"]["n=4,p=2,q=3mod4"] = r_min;
  for (auto r : {Rational(3), Rational(5, 2)}) {
    const auto w = necessary_witnesses(qs, 4, Rational(2), r, c.budget);
    json row;
    row["q"] = w.qs;
    row["omega"] = w.omega_ratios;
    row["gamma"] = w.gamma_ratios;
    row["omega_slope"] = w.omega_slope;
    row["gamma_slope"] = w.gamma_slope;
    rep.data["witnesses"]["n=4,p=2,r=" + r.str()] = row;
    rep.constants["witness-slope/omega/r=" + r.str()] = w.omega_slope;
    rep.constants["witness-slope/gamma/r=" + r.str()] = w.gamma_slope;
  }
}

// Random points and spheres for the incidence checks.
std::vector<FPoint> random_points(const Field& F, int d, std::size_t count, std::mt19937_64& rng) {
  std::vector<std::uint64_t> all(checked_grid_size(F.q(), d)), pick;
  std::iota(all.begin(), all.end(), std::uint64_t{0});
  std::sample(all.begin(), all.end(), std::back_inserter(pick), count, rng);
  const PointIndexer ix(F.q(), d);
  std::vector<FPoint> out;
  for (auto i : pick) out.push_back(ix.decode(i));
  return out;
}

WeightedFamily random_family(const Field& F, int d, std::size_t count, int kind, std::mt19937_64& rng) {
  std::vector<std::uint64_t> all(checked_grid_size(F.q(), d + 1)), pick;
  std::iota(all.begin(), all.end(), std::uint64_t{0});
  std::sample(all.begin(), all.end(), std::back_inserter(pick), count, rng);
  const PointIndexer ix(F.q(), d + 1);
  std::normal_distribution<double> nd;
  std::vector<Sphere> spheres;
  std::vector<Complex> w;
  for (auto i : pick) {
    FPoint x = ix.decode(i);
    const Scalar r = x[d];
    x.coords.pop_back();
    spheres.push_back({std::move(x), r});
    switch (kind % 4) {
      case 0: w.emplace_back(1.0); break;
      case 1: w.emplace_back(std::abs(nd(rng))); break;
      case 2: w.emplace_back(nd(rng)); break;
      default: {
        const double re = nd(rng);
        w.emplace_back(re, nd(rng));
      }
    }
  }
  return WeightedFamily(std::move(spheres), std::move(w));
}

std::string dq(int d, std::uint32_t q) { return "d=" + std::to_string(d) + ",q=" + std::to_string(q); }

void check_instance(const ExperimentConfig& c, Report& rep) {
  std::ifstream in(*c.instance_path);
  if (!in) throw ConfigError("cannot read instance file " + *c.instance_path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto inst = instance_from_json(buf.str());
  const auto id = identity_check(inst.field, inst.points, inst.family, inst.d, c.budget);
  rep.add("incidence/identity", id.residual, 1e-8, id.residual < 1e-8);
  rep.add("incidence/cauchy-schwarz", id.deviation, id.cs_bound, id.bound_ok);
  const auto dev = deviation_check(inst.field, inst.points, inst.family, inst.d);
  rep.data["instance"] = {{"incidence_re", id.incidence.real()}, {"incidence_im", id.incidence.imag()},
                          {"main_term_re", id.main_term.real()}, {"main_term_im", id.main_term.imag()},
                          {"deviation", id.deviation},           {"energy", id.energy},
                          {"regime_case", dev.regime_case},      {"in_regime", dev.in_regime}};
  if (dev.in_regime) rep.add("incidence/deviation", dev.deviation, dev.bound, dev.pass);
}

void suite_incidence(const ExperimentConfig& c, Report& rep) {
  if (c.instance_path) {
    check_instance(c, rep);
    return;
  }
  // exact identity
  for (auto [d, q] : {std::pair{2, 3u}, std::pair{2, 7u}, std::pair{3, 5u}}) {
    const Field F = Field::make(static_cast<int>(q));
    auto rng = suite_rng(c, 1, q * 16 + d);
    std::uniform_int_distribution<int> np(0, 25), ns(0, 12);
    double worst = 0.0;
    bool cs = true;
    for (int t = 0; t < trials_or(c, 500); ++t) {
      const auto P = random_points(F, d, np(rng), rng);
      const auto fam = random_family(F, d, ns(rng), t, rng);
      const auto r = identity_check(F, P, fam, d, c.budget);
      worst = std::max(worst, r.residual);
      cs &= r.bound_ok;
    }
    rep.add("identity/" + dq(d, q), worst, 1e-8, worst < 1e-8);
    rep.add("cauchy-schwarz/" + dq(d, q), cs ? 1.0 : 0.0, 1.0, cs, "==");
  }
  // energy decomposition
  for (auto [d, q] : {std::pair{2, 3u}, std::pair{2, 7u}, std::pair{3, 5u}}) {
    const Field F = Field::make(static_cast<int>(q));
    auto rng = suite_rng(c, 2, q * 16 + d);
    std::uniform_int_distribution<int> ns(1, 20);
    double worst = 0.0;
    bool signs = true, regime = true;
    for (int t = 0; t < trials_or(c, 500) / 5; ++t) {
      const auto fam = random_family(F, d, ns(rng), d == 2 ? 1 : t, rng);
      const auto r = energy_check(F, fam, d);
      worst = std::max(worst, r.residual / (1.0 + r.diagonal));
      signs &= r.sign_ok;
      regime &= r.regime_ok;
    }
    rep.add("energy/decomposition/" + dq(d, q), worst, 1e-8, worst < 1e-8);
    if (d == 2) rep.add("energy/signs/" + dq(d, q), signs ? 1.0 : 0.0, 1.0, signs, "==");
    if (d == 3) rep.add("energy/final-inequality/" + dq(d, q), regime ? 1.0 : 0.0, 1.0, regime, "==");
  }
  // deviation bound with the explicit constant
  for (int d : {2, 3, 4}) {
    for (std::uint32_t q : {3u, 5u, 7u, 11u}) {
      const Field F = Field::make(static_cast<int>(q));
      auto rng = suite_rng(c, 3, q * 16 + d);
      const auto th = static_cast<std::size_t>(std::floor(small_family_threshold(F, d) + 1e-9));
      const std::size_t grid = checked_grid_size(q, d, c.budget);
      std::uniform_int_distribution<std::size_t> ns(1, std::max<std::size_t>(th, 1));
      std::uniform_int_distribution<std::size_t> np(1, std::min<std::size_t>(grid, 400));
      double worst = 0.0;
      bool ok = true;
      for (int t = 0; t < trials_or(c, 1000); ++t) {
        const auto P = random_points(F, d, np(rng), rng);
        const auto fam = random_family(F, d, ns(rng), t, rng);
        const auto r = deviation_check(F, P, fam, d);
        ok &= r.in_regime && r.deviation <= r.bound * (1 + 1e-9) + 1e-9;
        worst = std::max(worst, r.ratio);
      }
      rep.add("deviation/" + dq(d, q), worst, kDeviationConstant, ok);
      rep.constants["deviation-ratio/" + dq(d, q)] = worst;
    }
  }
}

void suite_sharp(const ExperimentConfig& c, Report& rep) {
  std::vector<std::tuple<Field, int, int>> cases;
  if (c.d || c.field_given) {
    cases.emplace_back(field_of(c), c.d.value_or(6), c.k);
  } else {
    cases.emplace_back(Field::make(3), 6, 1);
    cases.emplace_back(Field::make(7), 6, 1);
    cases.emplace_back(Field::make(5), 5, 1);
    cases.emplace_back(Field::make(3), 8, 1);
    const bool none = !find_null_system(Field::make(3), 6, 3, c.budget).has_value();
    rep.add("sharp/no-half-system/d=6,q=3", none ? 0.0 : 1.0, 0.0, none, "==");
  }
  for (const auto& [F, d, k] : cases) {
    const auto s = sharp_family(F, d, k, std::nullopt, c.budget);
    const std::string tag = dq(d, F.q()) + ",k=" + std::to_string(k);
    rep.add("sharp/incidences/" + tag, static_cast<double>(s.incidences), 0.0, s.incidences == 0, "==");
    rep.add("sharp/points/" + tag, static_cast<double>(s.points.size()), static_cast<double>(s.expected_points),
            static_cast<long long>(s.points.size()) == s.expected_points, "==");
    rep.add("sharp/spheres/" + tag, static_cast<double>(s.spheres.size()), static_cast<double>(s.expected_spheres),
            static_cast<long long>(s.spheres.size()) == s.expected_spheres, "==");
    const double ratio = static_cast<double>(s.points.size()) * s.spheres.size() / std::pow(F.q(), d + 1);
    rep.constants["sharp/|P||S|/q^(d+1)/" + tag] = ratio;
    rep.data["sharp"][tag] = {{"points", s.points.size()}, {"spheres", s.spheres.size()},
                              {"null_block", s.null_block}, {"case", s.regime_case}};
  }
}

using SuiteFn = void (*)(const ExperimentConfig&, Report&);

const std::map<std::string, SuiteFn>& suites() {
  static const std::map<std::string, SuiteFn> m = {
      {"gauss", suite_gauss},         {"cone-ift", suite_cone_ift}, {"restriction-sweep", suite_restriction_sweep},
      {"l2-char", suite_l2_char},     {"necessary", suite_necessary}, {"incidence", suite_incidence},
      {"sharp", suite_sharp}};
  return m;
}

template <class Fn>
Report timed(const ExperimentConfig& c, const std::string& name, Fn fn) {
  Report rep;
  rep.suite = name;
  rep.config = c;
  const auto start = std::chrono::steady_clock::now();
  try {
    fn(rep);
  } catch (const BudgetExceeded& e) {
    rep.budget_exceeded = true;
    rep.budget_message = e.what();
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> v = {"gauss",     "cone-ift",  "restriction-sweep", "l2-char",
                                             "necessary", "incidence", "sharp",             "all"};
  return v;
}

Report run_suite(const ExperimentConfig& config) {
  if (config.suite == "all") {
    return timed(config, "all", [&](Report& rep) {
      for (const auto& name : suite_names()) {
        if (name == "all") continue;
        suites().at(name)(config, rep);
      }
    });
  }
  const auto it = suites().find(config.suite);
  if (it == suites().end()) throw ConfigError("unknown suite '" + config.suite + "'");
  return timed(config, config.suite, [&](Report& rep) { it->second(config, rep); });
}

Report run_sweep(const ExperimentConfig& config) {
  if (config.qs.empty()) throw ConfigError("sweep needs a q list");
  return timed(config, "sweep", [&](Report& rep) {
    try {
      add_sweep_checks(rep, sweep_restriction(sweep_config(config, config.exp_r, config.qs)), config.expect);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  });
}

}  // namespace conelab
