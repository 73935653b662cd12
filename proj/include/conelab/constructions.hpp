#pragma once

// Explicit witnesses: mutually orthogonal null vectors, maximal totally
// isotropic subspaces of the sum-of-squares form, the subspace
// Omega = H x F x {0} inside the cone, and point/sphere families with
// zero incidences.

#include <optional>
#include <vector>

#include "conelab/field.hpp"
#include "conelab/incidence.hpp"

namespace conelab {

struct NullSystem {
  int m = 0;
  std::vector<FPoint> vectors;
};

// Nonzero, pairwise orthogonal (each null), linearly independent.
bool is_null_system(const Field& F, const std::vector<FPoint>& vectors);

// Depth-first search over vectors of F^m whose first nonzero coordinate is 1,
// taken in canonical order with strictly increasing indices. nullopt when
// the search is exhausted.
std::optional<NullSystem> find_null_system(const Field& F, int m, int k, std::uint64_t budget = kDefaultBudget);

// Dimension of a maximal subspace of {||x|| = 0} in F^m:
// (m-1)/2 for odd m, m/2 when eta(-1)^{m/2} = 1, (m-2)/2 otherwise.
int isotropic_dimension(const Field& F, int m);
Subspace max_isotropic_subspace(const Field& F, int m, std::uint64_t budget = kDefaultBudget);

// H x F x {0} in F^n with H = max_isotropic_subspace(n - 2).
Subspace omega_subspace(const Field& F, int n, std::uint64_t budget = kDefaultBudget);

// Number of x in F^c with ||x|| = r.
long long sphere_point_count(const Field& F, int c, Scalar r);

struct SharpInstance {
  int d = 0;
  int k = 0;
  int regime_case = 0;
  int null_block = 0;  // m: B lives in the first m coordinates
  std::vector<FPoint> null_vectors;
  std::vector<Scalar> point_radii;   // radii of the spheres about 0 that carry U
  std::vector<Scalar> sphere_radii;  // R
  std::vector<FPoint> points;        // P = B + U
  std::vector<Sphere> spheres;       // centers in B, radii in R
  long long expected_points = 0;
  long long expected_spheres = 0;
  long long incidences = -1;         // direct count
};

// k = 1 is the family at the small-family threshold of its case; each step in
// k shrinks the null block by 4 (eta(-1) = -1) or 2 (eta(-1) = 1).
// `which` forces a case and throws DomainError if (d, q) does not admit it.
SharpInstance sharp_family(const Field& F, int d, int k, std::optional<int> which = std::nullopt,
                           std::uint64_t budget = kDefaultBudget);

IncidenceInstance to_instance(const Field& F, const SharpInstance& s);

}  // namespace conelab
