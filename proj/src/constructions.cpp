#include "conelab/constructions.hpp"

#include <cmath>
#include <functional>

#include "conelab/characters.hpp"
#include "conelab/cone.hpp"
#include "conelab/error.hpp"

namespace conelab {

bool is_null_system(const Field& F, const std::vector<FPoint>& vectors) {
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].is_zero()) return false;
    for (std::size_t j = i; j < vectors.size(); ++j) {
      if (dot(F, vectors[i], vectors[j]).code != 0) return false;
    }
  }
  return vectors.empty() || rank(F, vectors) == static_cast<int>(vectors.size());
}

namespace {

bool normalized(const FPoint& x) {
  for (const auto& c : x.coords) {
    if (c.code != 0) return c.code == 1;
  }
  return false;
}

}  // namespace

std::optional<NullSystem> find_null_system(const Field& F, int m, int k, std::uint64_t budget) {
  if (m < 1 || k < 1) throw DomainError("null system needs m >= 1 and k >= 1");
  if (2 * k > m) return std::nullopt;  // a totally isotropic subspace has dimension <= m/2
  std::vector<FPoint> cand;
  for (auto& x : enumerate_points(F, m, budget)) {
    if (normalized(x) && norm(F, x).code == 0) cand.push_back(std::move(x));
  }
  std::vector<FPoint> chosen;
  std::function<bool(std::size_t)> dfs = [&](std::size_t start) {
    if (static_cast<int>(chosen.size()) == k) return true;
    for (std::size_t i = start; i < cand.size(); ++i) {
      bool ok = true;
      for (const auto& v : chosen) {
        if (dot(F, v, cand[i]).code != 0) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen.push_back(cand[i]);
      if (rank(F, chosen) == static_cast<int>(chosen.size()) && dfs(i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!dfs(0)) return std::nullopt;
  return NullSystem{m, chosen};
}

int isotropic_dimension(const Field& F, int m) {
  if (m < 1) throw DomainError("isotropic subspace needs m >= 1");
  if (m % 2 == 1) return (m - 1) / 2;
  const bool plus = F.minus_one_is_square() || (m / 2) % 2 == 0;
  return plus ? m / 2 : (m - 2) / 2;
}

Subspace max_isotropic_subspace(const Field& F, int m, std::uint64_t budget) {
  const int t = isotropic_dimension(F, m);
  if (t == 0) return Subspace(F, m, {});
  auto sys = find_null_system(F, m, t, budget);
  if (!sys) throw DomainError("no isotropic subspace of the expected dimension was found");
  return Subspace(F, m, sys->vectors);
}

Subspace omega_subspace(const Field& F, int n, std::uint64_t budget) {
  if (n < 3) throw DomainError("cone dimension must be at least 3");
  const Subspace H = max_isotropic_subspace(F, n - 2, budget);
  std::vector<FPoint> basis;
  for (const auto& h : H.basis()) {
    FPoint v(n);
    for (int i = 0; i < n - 2; ++i) v[i] = h[i];
    basis.push_back(std::move(v));
  }
  FPoint e(n);
  e[n - 2] = F.one();
  basis.push_back(std::move(e));
  return Subspace(F, n, std::move(basis));
}

long long sphere_point_count(const Field& F, int c, Scalar r) {
  if (c < 1) throw DomainError("sphere dimension must be positive");
  CharacterTable chars(F);
  const long long q = F.q();
  auto ipow = [](long long b, int e) {
    long long v = 1;
    for (int i = 0; i < e; ++i) v *= b;
    return v;
  };
  const Scalar minus_one = F.neg(F.one());
  if (c % 2 == 0) {
    const int eta = chars.eta(F.pow(minus_one, c / 2));
    if (r.code == 0) return ipow(q, c - 1) + (q - 1) * eta * ipow(q, (c - 2) / 2);
    return ipow(q, c - 1) - eta * ipow(q, (c - 2) / 2);
  }
  if (r.code == 0) return ipow(q, c - 1);
  const int eta = chars.eta(F.mul(F.pow(minus_one, (c - 1) / 2), r));
  return ipow(q, c - 1) + eta * ipow(q, (c - 1) / 2);
}

namespace {

int default_case(const Field& F, int d) { return incidence_case(F, d); }

void check_case(const Field& F, int d, int which) {
  if (which < 1 || which > 3) throw DomainError("sharp family case must be 1, 2 or 3");
  if (which == 3) {
    if (d % 2 == 0 || d < 3) throw DomainError("case 3 needs odd d >= 3");
    return;
  }
  if (d % 2 == 1 || d < 2) throw DomainError("cases 1 and 2 need even d");
  if (incidence_case(F, d) != which) {
    throw DomainError(which == 1 ? "case 1 needs d = 2 mod 4 and q = 3 mod 4"
                                 : "case 2 needs d = 0 mod 4 or q = 1 mod 4");
  }
}

}  // namespace

SharpInstance sharp_family(const Field& F, int d, int k, std::optional<int> which, std::uint64_t budget) {
  if (k < 1) throw DomainError("sharp family needs k >= 1");
  const int cs = which ? *which : default_case(F, d);
  check_case(F, d, cs);

  const bool plus = F.minus_one_is_square();
  const int step = plus ? 2 : 4;
  // Largest null block keeping |S| = q^{m/2} (q-1)/2 under the case threshold.
  int m = cs == 1 ? d - 2 : cs == 2 ? d - 4 : d - 3;
  while (m > 0 && m % step != 0) --m;
  m -= step * (k - 1);
  if (m < step) throw DomainError("sharp family: d too small for this k (null block would be empty)");
  const int c = d - m;

  SharpInstance out;
  out.d = d;
  out.k = k;
  out.regime_case = cs;
  out.null_block = m;

  // m/2 null vectors from disjoint blocks of size `step`.
  auto block = find_null_system(F, step, step / 2, budget);
  if (!block) throw DomainError("no null system in a single block");
  for (int b = 0; b < m / step; ++b) {
    for (const auto& v : block->vectors) {
      FPoint e(d);
      for (int i = 0; i < step; ++i) e[b * step + i] = v[i];
      out.null_vectors.push_back(std::move(e));
    }
  }
  const Subspace B(F, d, out.null_vectors);
  const std::vector<FPoint> Bpts = B.elements(budget);

  const std::uint32_t nU = (F.q() + 1) / 2;
  for (std::uint32_t r = 1; r <= nU; ++r) out.point_radii.push_back(Scalar{r});
  out.sphere_radii.push_back(F.zero());
  for (std::uint32_t r = nU + 1; r < F.q(); ++r) out.sphere_radii.push_back(Scalar{r});

  std::vector<FPoint> U;
  for (const auto& u : enumerate_points(F, c, budget)) {
    const Scalar r = norm(F, u);
    if (r.code >= 1 && r.code <= nU) U.push_back(u);
  }
  if (Bpts.size() * U.size() > budget) throw BudgetExceeded("sharp family: |P| exceeds budget");
  for (const auto& b : Bpts) {
    for (const auto& u : U) {
      FPoint x = b;
      for (int i = 0; i < c; ++i) x[m + i] = u[i];
      out.points.push_back(std::move(x));
    }
  }
  for (const auto& b : Bpts) {
    for (const auto& r : out.sphere_radii) out.spheres.push_back({b, r});
  }

  long long u_expected = 0;
  for (const auto& r : out.point_radii) u_expected += sphere_point_count(F, c, r);
  const long long bsize = static_cast<long long>(std::llround(std::pow(F.q(), m / 2)));
  out.expected_points = bsize * u_expected;
  out.expected_spheres = bsize * static_cast<long long>(out.sphere_radii.size());
  out.incidences = incidence_count(F, out.points, out.spheres);
  return out;
}

IncidenceInstance to_instance(const Field& F, const SharpInstance& s) {
  return IncidenceInstance{F, s.d, s.points, WeightedFamily::uniform(s.spheres)};
}

}  // namespace conelab
