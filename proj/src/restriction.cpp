#include "conelab/restriction.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numeric>
#include <random>

#include "conelab/constructions.hpp"
#include "conelab/error.hpp"
#include "conelab/parallel.hpp"

namespace conelab {

namespace {

double ipow(double b, int e) { return std::pow(b, e); }

GridFn embed(const ConeVariety& cone, std::span<const Complex> f) {
  GridFn g(cone.field(), cone.dim(), std::vector<Complex>(checked_grid_size(cone.field().q(), cone.dim(), ~0ULL)));
  for (std::size_t i = 0; i < f.size(); ++i) g[cone.indices()[i]] = f[i];
  return g;
}

bool all_zero(std::span<const Complex> v) {
  return std::all_of(v.begin(), v.end(), [](const Complex& z) { return z == Complex(0.0); });
}

void check_exponent(const Rational& e, const char* what) {
  if (!e.is_infinite() && e < Rational(1)) throw DomainError(std::string(what) + " must be >= 1");
}

}  // namespace

TestFunction delta_function(const ConeVariety& cone, std::size_t position) {
  if (position >= cone.size()) throw DomainError("delta: position outside the cone");
  TestFunction f{TestFunction::Kind::delta, "delta", std::vector<Complex>(cone.size())};
  f.values[position] = 1.0;
  return f;
}

TestFunction constant_function(const ConeVariety& cone) {
  return {TestFunction::Kind::structured, "constant", std::vector<Complex>(cone.size(), Complex(1.0))};
}

TestFunction characteristic_function(const ConeVariety& cone, const std::vector<FPoint>& set) {
  TestFunction f{TestFunction::Kind::characteristic_set, "set", std::vector<Complex>(cone.size())};
  for (const auto& x : set) {
    const long long pos = cone.position(x);
    if (pos < 0) throw DomainError("characteristic function: point off the cone");
    f.values[pos] = 1.0;
  }
  return f;
}

double extension_ratio(const ConeVariety& cone, std::span<const Complex> f, const Rational& p, const Rational& r) {
  check_exponent(p, "p");
  check_exponent(r, "r");
  if (f.size() != cone.size()) throw DomainError("extension ratio: f must have one value per cone point");
  if (all_zero(f)) throw DomainError("extension ratio: f is identically zero");
  GridFn ext = inverse_fourier(embed(cone, f));
  const double scale = static_cast<double>(ext.size()) / static_cast<double>(cone.size());
  for (auto& v : ext.values()) v *= scale;
  return lr_counting_norm(ext.values(), r) / lp_surface_norm(f, p);
}

double restriction_ratio(const ConeVariety& cone, const GridFn& g, const Rational& p, const Rational& r) {
  check_exponent(p, "p");
  check_exponent(r, "r");
  if (g.dim() != cone.dim() || !(g.field() == cone.field())) throw DomainError("restriction ratio: grid mismatch");
  if (all_zero(g.values())) throw DomainError("restriction ratio: g is identically zero");
  const GridFn gh = fourier(g);
  std::vector<Complex> on_cone(cone.size());
  for (std::size_t i = 0; i < cone.size(); ++i) on_cone[i] = gh[cone.indices()[i]];
  return lp_surface_norm(on_cone, p.conjugate()) / lr_counting_norm(g.values(), r.conjugate());
}

double extension_ratio_cap(const Field& F, int n, const Rational& r) {
  if (r.is_infinite()) return 1.0;
  return std::pow(static_cast<double>(F.q()), n / r.to_double());
}

std::string family_name(Family f) {
  switch (f) {
    case Family::singleton: return "singleton";
    case Family::random_set: return "random-set";
    case Family::random_complex: return "random-complex";
    case Family::omega: return "omega";
    case Family::gamma: return "gamma";
    case Family::constant: return "constant";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  for (Family f : all_families()) {
    if (family_name(f) == name) return f;
  }
  throw ConfigError("unknown family '" + name + "'");
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> v = {Family::singleton, Family::random_set, Family::random_complex,
                                        Family::omega,     Family::gamma,      Family::constant};
  return v;
}

double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("slope fit needs two or more points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0.0 || y[i] <= 0.0) throw DomainError("slope fit needs positive values");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y[i]) - my);
  }
  if (sxx == 0.0) throw DomainError("slope fit needs two distinct x values");
  return sxy / sxx;
}

std::string classify_slope(double slope) {
  if (slope < kBoundedSlope) return "bounded";
  if (slope > kGrowingSlope) return "growing";
  return "inconclusive";
}

namespace {

struct Job {
  Family family;
  int trial;
};

struct Outcome {
  double ratio = 0.0;
  std::size_t support = 0;
};

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint32_t q, Family f, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), q,
                    static_cast<std::uint32_t>(f), static_cast<std::uint32_t>(trial)};
  return std::mt19937_64(seq);
}

RatioReport sweep_one(const SweepConfig& cfg, std::uint32_t q) {
  const Field F = Field::of_order(q);
  checked_grid_size(q, cfg.n, cfg.budget);
  const ConeVariety cone = cone_enumerate(F, cfg.n, cfg.budget);
  const std::size_t N = cone.size();

  std::vector<Job> jobs;
  for (Family f : cfg.families) {
    // A modulated translate of a singleton has the same norms, so one suffices.
    const int count = (f == Family::random_set || f == Family::random_complex) ? cfg.trials : 1;
    for (int t = 0; t < count; ++t) jobs.push_back({f, t});
  }

  std::vector<FPoint> omega;
  if (std::find(cfg.families.begin(), cfg.families.end(), Family::omega) != cfg.families.end()) {
    omega = omega_subspace(F, cfg.n, cfg.budget).elements(cfg.budget);
  }
  int scales = 0;
  while ((std::size_t{1} << (scales + 1)) <= N) ++scales;

  std::vector<Outcome> out(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t k) {
    const Job& job = jobs[k];
    auto rng = trial_rng(cfg.seed, q, job.family, job.trial);
    std::vector<Complex> f;
    switch (job.family) {
      case Family::singleton:
        f = delta_function(cone, 0).values;
        break;
      case Family::constant:
        f = constant_function(cone).values;
        break;
      case Family::omega:
        f = characteristic_function(cone, omega).values;
        break;
      case Family::random_set: {
        const std::size_t size = std::size_t{1} << (job.trial % (scales + 1));
        std::vector<std::size_t> all(N), pick;
        std::iota(all.begin(), all.end(), std::size_t{0});
        std::sample(all.begin(), all.end(), std::back_inserter(pick), size, rng);
        f.assign(N, Complex(0.0));
        for (auto i : pick) f[i] = 1.0;
        break;
      }
      case Family::random_complex: {
        std::normal_distribution<double> nd;
        f.resize(N);
        for (auto& v : f) {
          const double re = nd(rng);
          v = Complex(re, nd(rng));
        }
        break;
      }
      case Family::gamma: {
        GridFn g(F, cfg.n, cfg.budget);
        const auto G = gamma_testset(F, cfg.n);
        for (const auto& x : G) g.at(x) = 1.0;
        out[k] = {restriction_ratio(cone, g, cfg.p, cfg.r), G.size()};
        return;
      }
    }
    std::size_t support = 0;
    for (const auto& v : f) support += v != Complex(0.0);
    out[k] = {extension_ratio(cone, f, cfg.p, cfg.r), support};
  });

  RatioReport rep;
  rep.q = q;
  rep.n = cfg.n;
  rep.p = cfg.p;
  rep.r = cfg.r;
  rep.cap = extension_ratio_cap(F, cfg.n, cfg.r);
  rep.evaluated = jobs.size();
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    auto [it, fresh] = rep.family_max.try_emplace(jobs[k].family, out[k].ratio);
    if (!fresh) it->second = std::max(it->second, out[k].ratio);
    if (k == 0 || out[k].ratio > rep.max_ratio) {
      rep.max_ratio = out[k].ratio;
      rep.argmax = {jobs[k].family, jobs[k].trial, out[k].support};
    }
  }
  return rep;
}

}  // namespace

SweepReport sweep_restriction(const SweepConfig& config) {
  if (config.families.empty()) throw DomainError("sweep: empty family list");
  if (config.qs.empty()) throw DomainError("sweep: empty q list");
  if (config.trials < 1) throw DomainError("sweep: trials must be positive");
  if (config.n < 3) throw DomainError("sweep: cone dimension must be at least 3");
  check_exponent(config.p, "p");
  check_exponent(config.r, "r");
  SweepReport rep;
  rep.config = config;
  for (auto q : config.qs) rep.per_q.push_back(sweep_one(config, q));

  std::vector<double> xs;
  for (auto q : config.qs) xs.push_back(q);
  bool distinct = false;
  for (auto q : config.qs) distinct |= q != config.qs.front();
  if (!distinct) {
    rep.verdict = "inconclusive";
    return rep;
  }
  std::vector<double> ys;
  for (const auto& r : rep.per_q) ys.push_back(r.max_ratio);
  rep.slope = fit_log_slope(xs, ys);
  rep.verdict = classify_slope(rep.slope);
  for (Family f : config.families) {
    std::vector<double> fy;
    for (const auto& r : rep.per_q) fy.push_back(r.family_max.at(f));
    rep.family_slope[f] = fit_log_slope(xs, fy);
  }
  return rep;
}

// --- L^2 bound for characteristic functions ---

L2CharLab::L2CharLab(Field F, int n, std::uint64_t budget)
    : F_(std::move(F)), n_(n), cone_(cone_enumerate(F_, n, budget)) {
  if (F_.q() % 4 != 3) throw DomainError("L^2 characteristic bound needs q = 3 mod 4");
  if (n % 4 != 0) throw DomainError("L^2 characteristic bound needs n = 0 mod 4");
  const PointIndexer ix(F_.q(), n);
  dual_.resize(ix.size());
  for (std::uint64_t i = 0; i < ix.size(); ++i) dual_[i] = in_dual_cone(F_, ix.decode(i)) ? 1 : 0;
}

L2CharReport L2CharLab::estimate(const std::vector<std::uint64_t>& G) const {
  if (G.empty()) throw DomainError("L^2 characteristic bound: empty set");
  GridFn g(F_, n_, std::vector<Complex>(dual_.size()));
  for (auto i : G) {
    if (i >= g.size()) throw DomainError("L^2 characteristic bound: index outside F^n");
    if (g[i] != Complex(0.0)) throw DomainError("L^2 characteristic bound: duplicate point");
    g[i] = 1.0;
  }
  const double q = F_.q();
  GridFn gh = fourier(g);
  double on_cone = 0.0;
  for (auto i : cone_.indices()) on_cone += std::norm(gh[i]);

  // inverse transform of |G^|^2 counts ordered pairs by difference
  for (auto& v : gh.values()) v = std::norm(v);
  const GridFn pairs = inverse_fourier(gh);
  long long dual = 0, off = 0;
  for (std::uint64_t z = 0; z < pairs.size(); ++z) {
    const long long c = std::llround(pairs[z].real());
    (dual_[z] ? dual : off) += c;
  }
  const long long size = static_cast<long long>(G.size());
  if (dual + off != size * size) throw Error("L^2 characteristic bound: pair counts do not add up");

  L2CharReport rep;
  rep.size = G.size();
  rep.m = std::pow(q, -n_ + 1) * on_cone;
  const double qh = std::pow(q, -n_ / 2.0);
  rep.pairs_dual = dual;
  rep.pairs_off = off;
  rep.m1 = static_cast<double>(size);
  rep.m2 = -(q - 1) * qh * static_cast<double>(dual);
  rep.m3 = qh * static_cast<double>(off);
  rep.residual = std::abs(rep.m - (rep.m1 + rep.m2 + rep.m3));
  const double s = static_cast<double>(size);
  rep.bound = s + qh * s * s;
  const long long small = static_cast<long long>(std::llround(ipow(q, n_ / 2)));
  const long long medium = small * static_cast<long long>(q);
  if (size <= small) {
    rep.regime = "small";
    rep.regime_bound = s;
  } else if (size <= medium) {
    rep.regime = "medium";
    rep.regime_bound = qh * s * s;
  } else {
    rep.regime = "large";
    rep.regime_bound = q * s;
  }
  rep.exact_ok = off - (static_cast<long long>(q) - 1) * dual <= size * size;
  rep.signs_ok = dual >= 1 && off >= 0 && off <= size * size;
  rep.pass = rep.exact_ok && rep.signs_ok && rep.residual <= 1e-9 * (1.0 + q * s);
  return rep;
}

L2CharReport l2_char_estimate(const Field& F, int n, const std::vector<FPoint>& G) {
  const L2CharLab lab(F, n);
  const PointIndexer ix(F.q(), n);
  std::vector<std::uint64_t> idx;
  for (const auto& x : G) {
    if (static_cast<int>(x.dim()) != n) throw DomainError("L^2 characteristic bound: dimension mismatch");
    idx.push_back(ix.encode(x));
  }
  return lab.estimate(idx);
}

// --- dyadic decomposition ---

int default_cutoff(const Field& F, int n) {
  return static_cast<int>(std::ceil(n * std::log2(static_cast<double>(F.q())) - 1e-12));
}

double dyadic_exponent(int n) { return (2.0 * n + 4.0) / (n + 4.0); }

namespace {

// i with 2^{-i-1} < v <= 2^{-i}, for 0 < v <= 1.
int level_of(double v) {
  int e = 0;
  const double m = std::frexp(v, &e);
  return m == 0.5 ? 1 - e : -e;
}

void push_level(std::vector<DyadicLevel>& levels, int i, std::uint64_t x) {
  auto it = std::lower_bound(levels.begin(), levels.end(), i, [](const DyadicLevel& l, int v) { return l.i < v; });
  if (it == levels.end() || it->i != i) it = levels.insert(it, DyadicLevel{i, {}});
  it->points.push_back(x);
}

}  // namespace

DyadicDecomposition dyadic_decompose(const GridFn& g, int cutoff) {
  if (cutoff < 0) throw DomainError("dyadic decomposition: cutoff must be nonnegative");
  DyadicDecomposition dec;
  dec.cutoff = cutoff;
  for (std::uint64_t x = 0; x < g.size(); ++x) {
    const Complex v = g[x];
    if (std::abs(v.imag()) > 0.0 || v.real() < 0.0 || v.real() > 1.0 || std::isnan(v.real())) {
      throw DomainError("dyadic decomposition: g must be real with values in [0, 1]");
    }
    if (v.real() == 0.0) continue;
    const int i = level_of(v.real());
    push_level(i <= cutoff ? dec.levels : dec.tail, i, x);
  }
  return dec;
}

GridFn reconstruct(const GridFn& like, const DyadicDecomposition& dec, bool with_tail) {
  GridFn out(like.field(), like.dim(), std::vector<Complex>(like.size()));
  auto add = [&](const std::vector<DyadicLevel>& levels) {
    for (const auto& l : levels) {
      for (auto x : l.points) out[x] = std::ldexp(1.0, -l.i);
    }
  };
  add(dec.levels);
  if (with_tail) add(dec.tail);
  return out;
}

GridFn normalize_for_dyadic(const GridFn& g) {
  const double s = dyadic_exponent(g.dim());
  double acc = 0.0;
  for (const auto& v : g.values()) {
    if (std::abs(v.imag()) > 0.0 || v.real() < 0.0) throw DomainError("normalization needs g >= 0");
    acc += std::pow(v.real(), s);
  }
  if (acc == 0.0) throw DomainError("normalization: g is identically zero");
  const double c = std::pow(acc, -1.0 / s);
  GridFn out = g;
  for (auto& v : out.values()) v = std::min(1.0, v.real() * c);
  return out;
}

double restricted_l2_norm(const ConeVariety& cone, const GridFn& h) {
  const GridFn hh = fourier(h);
  double acc = 0.0;
  for (auto i : cone.indices()) acc += std::norm(hh[i]);
  return std::sqrt(acc / static_cast<double>(cone.size()));
}

DyadicReport dyadic_check(const ConeVariety& cone, const GridFn& g, const DyadicDecomposition& dec) {
  const Field& F = cone.field();
  const int n = cone.dim();
  const double q = F.q();
  DyadicReport rep;
  rep.s = dyadic_exponent(n);
  const double eps = 1e-12;
  rep.level_sizes_ok = rep.level_sizes_relaxed_ok = true;
  const double small = std::pow(q, n / 2.0), medium = std::pow(q, (n + 2) / 2.0);

  auto level_norm = [&](const DyadicLevel& l) {
    GridFn ind(F, n, std::vector<Complex>(g.size()));
    for (auto x : l.points) ind[x] = 1.0;
    return restricted_l2_norm(cone, ind);
  };
  for (const auto& l : dec.levels) {
    const double size = static_cast<double>(l.points.size());
    const double scale = std::pow(2.0, rep.s * l.i);
    rep.level_sum += size / scale;
    rep.level_sizes_ok &= size <= scale * (1 + eps);
    rep.level_sizes_relaxed_ok &= size <= std::pow(2.0, rep.s * (l.i + 1)) * (1 + eps);
    // ties at the class boundaries go to the lower class; scales past q^n stay in the top one
    const double term = std::ldexp(1.0, -l.i) * level_norm(l);
    (scale <= small * (1 + eps) ? rep.u1 : scale <= medium * (1 + eps) ? rep.u2 : rep.u3) += term;
  }
  rep.level_sum_ok = rep.level_sum <= 1 + eps;
  rep.level_sum_relaxed_ok = rep.level_sum <= std::pow(2.0, rep.s) * (1 + eps);
  for (const auto& l : dec.tail) rep.tail_sum += std::ldexp(1.0, -l.i) * level_norm(l);
  rep.tail_bound = std::pow(q, n) * std::ldexp(1.0, -(dec.cutoff + 1));

  rep.norm_g = restricted_l2_norm(cone, g);
  rep.norm_head = restricted_l2_norm(cone, reconstruct(g, dec, false));
  rep.norm_reconstruction = restricted_l2_norm(cone, reconstruct(g, dec, true));
  const double u = rep.u1 + rep.u2 + rep.u3;
  rep.minkowski_ok = rep.norm_head <= u * (1 + 1e-9) + 1e-12 &&
                     rep.norm_reconstruction <= (u + rep.tail_sum) * (1 + 1e-9) + 1e-12;
  return rep;
}

// --- the set Gamma ---

std::vector<FPoint> gamma_testset(const Field& F, int n) {
  if (n < 3) throw DomainError("Gamma needs n >= 3");
  std::vector<Scalar> squares;
  for (std::uint32_t c = 1; c < F.q(); ++c) {
    if (F.is_square(Scalar{c})) squares.push_back(Scalar{c});
  }
  const Scalar four = F.from_int(4);
  std::vector<FPoint> out;
  for (const auto& head : enumerate_points(F, n - 2)) {
    const Scalar num = norm(F, head);
    for (const auto& s : squares) {
      FPoint x(n);
      for (int i = 0; i < n - 2; ++i) x[i] = head[i];
      x[n - 2] = F.div(num, F.mul(four, s));
      x[n - 1] = s;
      out.push_back(std::move(x));
    }
  }
  return out;
}

GammaFtReport gamma_testset_ft_check(const Field& F, int n, double tolerance, std::uint64_t budget) {
  const ConeVariety cone = cone_enumerate(F, n, budget);
  GridFn g(F, n, budget);
  const auto G = gamma_testset(F, n);
  for (const auto& x : G) g.at(x) = 1.0;
  const GridFn gh = fourier(g);
  GammaFtReport rep;
  rep.gamma_size = G.size();
  const double q = F.q();
  rep.expected = std::pow(q, (n - 2) / 2.0) * (q - 1) / 2.0;
  for (std::size_t k = 0; k < cone.size(); ++k) {
    if (cone.points()[k][n - 2].code == 0) continue;
    ++rep.checked;
    rep.max_error = std::max(rep.max_error, std::abs(std::abs(gh[cone.indices()[k]]) - rep.expected));
  }
  rep.value_at_zero = std::abs(gh[0]);
  rep.pass = rep.checked > 0 && rep.max_error <= tolerance;
  return rep;
}

// --- necessary conditions ---

double necessary_r_min(const Field& F, int n, const Rational& p) {
  check_exponent(p, "p");
  if (n < 3) throw DomainError("cone dimension must be at least 3");
  const double gamma_r = (2.0 * n - 2.0) / (n - 2.0);
  if (p == Rational(1)) return std::numeric_limits<double>::infinity();
  const int k = isotropic_dimension(F, n - 2) + 1;  // dim Omega
  const double pd = p.is_infinite() ? 0.0 : p.to_double();
  const double subspace_r = p.is_infinite() ? static_cast<double>(n - k) / (n - 1 - k)
                                            : pd * (n - k) / ((pd - 1) * (n - 1 - k));
  return std::max(gamma_r, subspace_r);
}

WitnessReport necessary_witnesses(const std::vector<std::uint32_t>& qs, int n, const Rational& p, const Rational& r,
                                  std::uint64_t budget) {
  if (qs.empty()) throw DomainError("witnesses: empty q list");
  WitnessReport rep;
  rep.p = p;
  rep.r = r;
  rep.qs = qs;
  std::vector<double> xs;
  for (auto q : qs) {
    const Field F = Field::of_order(q);
    checked_grid_size(q, n, budget);
    const ConeVariety cone = cone_enumerate(F, n, budget);
    const auto omega = omega_subspace(F, n, budget).elements(budget);
    rep.omega_ratios.push_back(extension_ratio(cone, characteristic_function(cone, omega), p, r));
    GridFn g(F, n, budget);
    for (const auto& x : gamma_testset(F, n)) g.at(x) = 1.0;
    rep.gamma_ratios.push_back(restriction_ratio(cone, g, p, r));
    xs.push_back(q);
  }
  if (qs.size() >= 2) {
    rep.omega_slope = fit_log_slope(xs, rep.omega_ratios);
    rep.gamma_slope = fit_log_slope(xs, rep.gamma_ratios);
  }
  return rep;
}

}  // namespace conelab
