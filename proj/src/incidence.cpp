#include "conelab/incidence.hpp"

#include <cmath>
#include <numeric>

#include "json.hpp"

#include "conelab/cone.hpp"
#include "conelab/error.hpp"
#include "conelab/parallel.hpp"
#include "conelab/spectral.hpp"

namespace conelab {

bool on_sphere(const Field& F, const FPoint& x, const Sphere& s) {
  if (x.dim() != s.center.dim()) throw DomainError("point and sphere dimensions differ");
  Scalar acc = F.zero();
  for (std::size_t i = 0; i < x.dim(); ++i) acc = F.add(acc, F.square(F.sub(x[i], s.center[i])));
  return acc == s.radius;
}

WeightedFamily::WeightedFamily(std::vector<Sphere> spheres, std::vector<Complex> weights)
    : spheres_(std::move(spheres)), weights_(std::move(weights)) {
  if (spheres_.size() != weights_.size()) throw DomainError("one weight per sphere is required");
  std::set<Sphere> seen;
  for (const auto& s : spheres_) {
    if (s.center.dim() != spheres_.front().center.dim()) throw DomainError("spheres of mixed dimension");
    if (!seen.insert(s).second) throw DomainError("repeated sphere (same center and radius)");
  }
}

WeightedFamily WeightedFamily::uniform(std::vector<Sphere> spheres) {
  std::vector<Complex> w(spheres.size(), 1.0);
  return WeightedFamily(std::move(spheres), std::move(w));
}

Complex WeightedFamily::weight_sum() const { return std::accumulate(weights_.begin(), weights_.end(), Complex{}); }

double WeightedFamily::weight_l2_squared() const {
  double s = 0.0;
  for (const auto& w : weights_) s += std::norm(w);
  return s;
}

bool WeightedFamily::nonnegative() const {
  for (const auto& w : weights_) {
    if (w.imag() != 0.0 || w.real() < 0.0) return false;
  }
  return true;
}

namespace {

void check_dims(const std::vector<FPoint>& P, const WeightedFamily& family, int d) {
  for (const auto& x : P) {
    if (static_cast<int>(x.dim()) != d) throw DomainError("point dimension does not match d");
  }
  for (const auto& s : family.spheres()) {
    if (static_cast<int>(s.center.dim()) != d) throw DomainError("sphere dimension does not match d");
  }
}

int infer_dim(const std::vector<FPoint>& P, const WeightedFamily& family) {
  if (!P.empty()) return static_cast<int>(P.front().dim());
  if (!family.empty()) return static_cast<int>(family.spheres().front().center.dim());
  return 0;
}

template <typename T, typename Fn>
T parallel_sum(std::size_t count, Fn fn) {
  std::vector<T> part(count);
  parallel_for(count, [&](std::size_t i) { part[i] = fn(i); });
  return std::accumulate(part.begin(), part.end(), T{});
}

double qpow(const Field& F, double e) { return std::pow(static_cast<double>(F.q()), e); }

}  // namespace

Complex incidence_weighted(const Field& F, const std::vector<FPoint>& P, const WeightedFamily& family) {
  check_dims(P, family, infer_dim(P, family));
  return parallel_sum<Complex>(family.size(), [&](std::size_t k) {
    long long hits = 0;
    for (const auto& x : P) hits += on_sphere(F, x, family.spheres()[k]);
    return family.weights()[k] * static_cast<double>(hits);
  });
}

long long incidence_count(const Field& F, const std::vector<FPoint>& P, const std::vector<Sphere>& spheres) {
  return parallel_sum<long long>(spheres.size(), [&](std::size_t k) {
    long long hits = 0;
    for (const auto& x : P) hits += on_sphere(F, x, spheres[k]);
    return hits;
  });
}

LiftedFamily lift(const Field& F, const WeightedFamily& family, int d) {
  if (d < 2) throw DomainError("lift needs d >= 2");
  check_dims({}, family, d);
  LiftedFamily out;
  out.dim = d + 2;
  out.points.reserve(family.size() * (F.q() - 1));
  const Scalar minus_two = F.from_int(-2);
  for (std::size_t k = 0; k < family.size(); ++k) {
    const Sphere& s = family.spheres()[k];
    FPoint base(d + 2);
    for (int i = 0; i < d; ++i) base[i] = F.mul(minus_two, s.center[i]);
    base[d] = F.one();
    base[d + 1] = F.sub(norm(F, s.center), s.radius);
    for (std::uint32_t t = 1; t < F.q(); ++t) {
      out.points.push_back(scale(F, Scalar{t}, base));
      out.weights.push_back(family.weights()[k]);
    }
  }
  // Coordinate d equals t, and t recovers (a, r); orbits of distinct spheres are disjoint.
  std::set<FPoint> seen(out.points.begin(), out.points.end());
  if (seen.size() != out.points.size()) throw DomainError("lifted spheres overlap");
  return out;
}

std::vector<FPoint> lift_points(const Field& F, const std::vector<FPoint>& P) {
  std::vector<FPoint> out;
  out.reserve(P.size() * (F.q() - 1));
  for (const auto& x : P) {
    FPoint base(x.dim() + 2);
    for (std::size_t i = 0; i < x.dim(); ++i) base[i] = x[i];
    base[x.dim()] = norm(F, x);
    base[x.dim() + 1] = F.one();
    for (std::uint32_t l = 1; l < F.q(); ++l) out.push_back(scale(F, Scalar{l}, base));
  }
  return out;
}

namespace {

// Pair sums over S' x S' split by whether m - m' lies on the dual cone.
struct PairSums {
  double diagonal = 0.0;  // sum |w'|^2
  double dual = 0.0;      // sum over m - m' in C* (diagonal included)
  double off = 0.0;       // sum over m - m' off C*
  double off_eta = 0.0;   // the same weighted by eta(-Gamma(m - m'))
};

PairSums pair_sums(const Field& F, const LiftedFamily& L) {
  CharacterTable chars(F);
  const std::size_t N = L.points.size();
  std::vector<PairSums> rows(N);
  parallel_for(N, [&](std::size_t i) {
    PairSums r;
    r.diagonal = std::norm(L.weights[i]);
    FPoint diff(L.dim);
    for (std::size_t j = 0; j < N; ++j) {
      for (int c = 0; c < L.dim; ++c) diff[c] = F.sub(L.points[i][c], L.points[j][c]);
      const double ww = (L.weights[i] * std::conj(L.weights[j])).real();
      const Scalar g = gamma(F, diff);
      if (g.code == 0) {
        r.dual += ww;
      } else {
        r.off += ww;
        r.off_eta += ww * chars.eta(F.neg(g));
      }
    }
    rows[i] = r;
  });
  PairSums total;
  for (const auto& r : rows) {
    total.diagonal += r.diagonal;
    total.dual += r.dual;
    total.off += r.off;
    total.off_eta += r.off_eta;
  }
  return total;
}

double closed_energy(const Field& F, const LiftedFamily& L) {
  const ConeKernel K(F, L.dim);
  const std::size_t N = L.points.size();
  const double scale = qpow(F, L.dim);
  return scale * parallel_sum<double>(N, [&](std::size_t i) {
           FPoint diff(L.dim);
           Complex acc{0.0, 0.0};
           for (std::size_t j = 0; j < N; ++j) {
             for (int c = 0; c < L.dim; ++c) diff[c] = F.sub(L.points[i][c], L.points[j][c]);
             acc += L.weights[i] * std::conj(L.weights[j]) * K.from_gamma(i == j, gamma(F, diff));
           }
           return acc.real();
         });
}

}  // namespace

double cone_energy(const Field& F, const LiftedFamily& lifted, EnergyMode mode, std::uint64_t budget) {
  if (lifted.dim < 4) throw DomainError("lifted family has no dimension");
  if (mode == EnergyMode::closed) {
    const std::uint64_t n = lifted.points.size();
    if (n > 0 && n > budget / n) throw BudgetExceeded("closed-mode energy: |S'|^2 exceeds budget");
    return closed_energy(F, lifted);
  }
  GridFn g(F, lifted.dim, budget);
  for (std::size_t k = 0; k < lifted.points.size(); ++k) g.at(lifted.points[k]) = lifted.weights[k];
  const GridFn hat = fourier(g);
  const ConeVariety cone = cone_enumerate(F, lifted.dim, budget);
  double e = 0.0;
  for (const auto i : cone.indices()) e += std::norm(hat[i]);
  return e;
}

int incidence_case(const Field& F, int d) {
  if (d < 2) throw DomainError("incidence bounds need d >= 2");
  if (d % 2 == 1) {
    if (d < 3) throw DomainError("odd d must be at least 3");
    return 3;
  }
  // G_1^d = (eta(-1) q)^{d/2} is negative exactly in case 1.
  const bool negative = !F.minus_one_is_square() && (d / 2) % 2 == 1;
  return negative ? 1 : 2;
}

double small_family_threshold(const Field& F, int d) {
  switch (incidence_case(F, d)) {
    case 1: return qpow(F, d / 2.0);
    case 2: return qpow(F, (d - 2) / 2.0);
    default: return qpow(F, (d - 1) / 2.0);
  }
}

double deviation_constant(const Field& F, int d) {
  const double q = F.q();
  switch (incidence_case(F, d)) {
    case 1: return std::sqrt(2.0 * (2.0 - 1.0 / q));
    case 2: return std::sqrt(2.0 * (1.0 + std::pow((q - 1.0) / q, 2)));
    default: return std::sqrt(1.0 + (q - 1.0) / q);
  }
}

IdentityReport identity_check(const Field& F, const std::vector<FPoint>& P, const WeightedFamily& family, int d,
                              std::uint64_t budget) {
  check_dims(P, family, d);
  IdentityReport r;
  const double q = F.q();
  r.incidence = incidence_weighted(F, P, family);
  r.main_term = static_cast<double>(P.size()) / q * family.weight_sum();
  const LiftedFamily L = lift(F, family, d);
  const std::vector<FPoint> Pp = lift_points(F, P);
  const std::uint64_t pairs = static_cast<std::uint64_t>(Pp.size()) * L.points.size();
  if (pairs > budget) throw BudgetExceeded("identity check: |P'||S'| exceeds budget");
  CharacterTable chars(F);
  const Complex sum = parallel_sum<Complex>(Pp.size(), [&](std::size_t i) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < L.points.size(); ++j) acc += chars.e(dot(F, Pp[i], L.points[j])) * L.weights[j];
    return acc;
  });
  r.exponential = sum / (q * (q - 1.0));
  r.residual = std::abs(r.incidence - r.main_term - r.exponential);
  double scale = 1.0;
  for (const auto& w : family.weights()) scale += std::abs(w) * static_cast<double>(P.size());
  r.identity_ok = r.residual <= 1e-8 * scale;
  r.deviation = std::abs(r.incidence - r.main_term);
  r.energy = L.points.empty() ? 0.0 : cone_energy(F, L, EnergyMode::closed, budget);
  r.cs_bound = std::sqrt(static_cast<double>(P.size()) * std::max(r.energy, 0.0)) / (q * std::sqrt(q - 1.0));
  r.bound_ok = r.deviation <= r.cs_bound * (1.0 + 1e-9) + 1e-9;
  return r;
}

namespace {

struct Terms {
  double diagonal = 0.0, dual = 0.0, off = 0.0;
  double total() const { return diagonal + dual + off; }
};

Terms decompose(const Field& F, const LiftedFamily& L, int d, int which) {
  const PairSums s = pair_sums(F, L);
  Terms t;
  const double q = F.q();
  t.diagonal = std::pow(q, d + 1) * s.diagonal;
  if (which == 3) {
    t.off = static_cast<double>(gauss_power_even(F, d + 1)) * s.off_eta;
  } else {
    const double g = static_cast<double>(gauss_power_even(F, d));
    t.dual = (q - 1.0) * g * s.dual;
    t.off = -g * s.off;
  }
  return t;
}

double regime_exponent(int which, int d) {
  if (which == 1) return (d + 4) / 2.0;
  if (which == 2) return (d + 6) / 2.0;
  return (d + 5) / 2.0;
}

}  // namespace

EnergyReport energy_check(const Field& F, const WeightedFamily& family, int d) {
  EnergyReport r;
  r.regime_case = incidence_case(F, d);
  const LiftedFamily L = lift(F, family, d);
  const double w2 = family.weight_l2_squared();
  const double q = F.q();
  r.energy = L.points.empty() ? 0.0 : cone_energy(F, L, EnergyMode::closed);
  const Terms t = decompose(F, L, d, r.regime_case);
  r.diagonal = t.diagonal;
  r.dual_term = t.dual;
  r.off_term = t.off;
  const double scale = 1.0 + std::pow(q, d + 3) * w2;
  r.residual = std::abs(r.energy - t.total());
  r.decomposition_ok = r.residual <= 1e-9 * scale;

  const double A = std::pow(q, d + 2) + std::pow(q, regime_exponent(r.regime_case, d)) * family.size();
  r.regime_bound = A * w2;
  r.plancherel_bound = std::pow(q, d + 3) * w2;

  // Split w into the nonnegative parts Re^+, Re^-, Im^+, Im^- and check the
  // dropped term's sign and the regime bound on each part.
  bool parts_ok = true;
  for (int part = 0; part < 4; ++part) {
    LiftedFamily Lp = L;
    double part_w2 = 0.0;
    for (std::size_t k = 0; k < Lp.weights.size(); ++k) {
      const double v = part < 2 ? L.weights[k].real() : L.weights[k].imag();
      const double u = part % 2 == 0 ? std::max(v, 0.0) : std::max(-v, 0.0);
      Lp.weights[k] = u;
    }
    for (std::size_t k = 0; k < family.size(); ++k) {
      const Complex w = family.weights()[k];
      const double v = part < 2 ? w.real() : w.imag();
      const double u = part % 2 == 0 ? std::max(v, 0.0) : std::max(-v, 0.0);
      part_w2 += u * u;
    }
    if (part_w2 == 0.0) continue;
    const Terms tp = decompose(F, Lp, d, r.regime_case);
    const double tol = 1e-9 * (1.0 + std::pow(q, d + 3) * part_w2);
    if (r.regime_case == 1 && tp.dual > tol) r.sign_ok = false;
    if (r.regime_case == 2 && tp.off > tol) r.sign_ok = false;
    if (tp.total() > A * part_w2 + tol) parts_ok = false;
  }
  // Nonnegative and case-3 weights satisfy the bound directly; otherwise the
  // four-part split costs a factor 2.
  const bool direct = family.nonnegative() || r.regime_case == 3;
  const double factor = direct ? 1.0 : 2.0;
  r.regime_ok = parts_ok && r.energy <= factor * r.regime_bound * (1.0 + 1e-9) + 1e-9 &&
                r.energy <= r.plancherel_bound * (1.0 + 1e-9) + 1e-9;
  return r;
}

DeviationReport deviation_check(const Field& F, const std::vector<FPoint>& P, const WeightedFamily& family, int d) {
  check_dims(P, family, d);
  DeviationReport r;
  r.regime_case = incidence_case(F, d);
  r.in_regime = static_cast<double>(family.size()) <= small_family_threshold(F, d) + 1e-9;
  const Complex I = incidence_weighted(F, P, family);
  r.deviation = std::abs(I - static_cast<double>(P.size()) / F.q() * family.weight_sum());
  const double unit = qpow(F, (d - 1) / 2.0) * std::sqrt(static_cast<double>(P.size()) * family.weight_l2_squared());
  r.bound = kDeviationConstant * unit;
  r.case_bound = deviation_constant(F, d) * unit;
  r.ratio = unit > 0.0 ? r.deviation / unit : 0.0;
  r.pass = !r.in_regime || r.deviation <= r.case_bound * (1.0 + 1e-9) + 1e-9;
  return r;
}

std::set<Scalar> distance_set(const Field& F, const std::vector<FPoint>& E) {
  std::set<Scalar> out;
  for (const auto& x : E) {
    for (const auto& y : E) out.insert(norm(F, sub(F, x, y)));
  }
  return out;
}

namespace {

using nlohmann::json;

json point_json(const FPoint& x) {
  json a = json::array();
  for (const auto& c : x.coords) a.push_back(c.code);
  return a;
}

FPoint point_from(const Field& F, const json& a, int d) {
  if (!a.is_array() || static_cast<int>(a.size()) != d) throw ConfigError("instance: coordinate list has wrong length");
  FPoint x(d);
  for (int i = 0; i < d; ++i) {
    const auto v = a[i].get<long long>();
    if (v < 0 || v >= static_cast<long long>(F.q())) throw ConfigError("instance: element code out of range");
    x[i] = Scalar{static_cast<std::uint32_t>(v)};
  }
  return x;
}

}  // namespace

std::string instance_to_json(const IncidenceInstance& inst) {
  json j;
  j["field"] = {{"p", inst.field.p()}, {"ell", inst.field.ell()}, {"modulus", inst.field.modulus()}};
  j["d"] = inst.d;
  j["points"] = json::array();
  for (const auto& x : inst.points) j["points"].push_back(point_json(x));
  j["spheres"] = json::array();
  for (std::size_t k = 0; k < inst.family.size(); ++k) {
    const auto& s = inst.family.spheres()[k];
    const auto& w = inst.family.weights()[k];
    j["spheres"].push_back({{"center", point_json(s.center)}, {"radius", s.radius.code}, {"weight", {w.real(), w.imag()}}});
  }
  return j.dump(1);
}

IncidenceInstance instance_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    const auto& f = j.at("field");
    const int ell = f.value("ell", 1);
    std::vector<int> modulus = f.value("modulus", std::vector<int>{});
    if (ell == 1) modulus.clear();
    Field F = Field::make(f.at("p").get<int>(), ell, modulus);
    const int d = j.at("d").get<int>();
    if (d < 1) throw ConfigError("instance: d must be positive");
    std::vector<FPoint> points;
    for (const auto& a : j.at("points")) points.push_back(point_from(F, a, d));
    std::vector<Sphere> spheres;
    std::vector<Complex> weights;
    for (const auto& s : j.at("spheres")) {
      const auto r = s.at("radius").get<long long>();
      if (r < 0 || r >= static_cast<long long>(F.q())) throw ConfigError("instance: radius code out of range");
      spheres.push_back({point_from(F, s.at("center"), d), Scalar{static_cast<std::uint32_t>(r)}});
      if (s.contains("weight")) {
        const auto& w = s.at("weight");
        weights.emplace_back(w.at(0).get<double>(), w.at(1).get<double>());
      } else {
        weights.emplace_back(1.0, 0.0);
      }
    }
    return IncidenceInstance{F, d, std::move(points), WeightedFamily(std::move(spheres), std::move(weights))};
  } catch (const json::exception& e) {
    throw ConfigError(std::string("instance JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("instance JSON: ") + e.what());
  }
}

}  // namespace conelab
