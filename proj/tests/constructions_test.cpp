#include "conelab/constructions.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "conelab/cone.hpp"
#include "conelab/error.hpp"

namespace conelab {
namespace {

TEST(ConstructionsTest, NullSystemExamples) {
  const Field F3 = Field::make(3);
  EXPECT_TRUE(is_null_system(F3, {make_point(F3, {1, 1, 1, 0}), make_point(F3, {0, 1, 2, 2})}));
  EXPECT_FALSE(is_null_system(F3, {make_point(F3, {1, 1, 1, 0}), make_point(F3, {2, 2, 2, 0})}));
  EXPECT_FALSE(is_null_system(F3, {make_point(F3, {1, 0, 0, 0})}));
  const auto sys = find_null_system(F3, 4, 2);
  ASSERT_TRUE(sys.has_value());
  EXPECT_EQ(sys->vectors.size(), 2u);
  EXPECT_TRUE(is_null_system(F3, sys->vectors));

  EXPECT_FALSE(find_null_system(F3, 2, 1).has_value());
  const Field F5 = Field::make(5);
  const auto one = find_null_system(F5, 2, 1);
  ASSERT_TRUE(one.has_value());
  EXPECT_EQ(one->vectors.front(), make_point(F5, {1, 2}));
}

TEST(ConstructionsTest, NoHalfDimensionalSystemAtSixThree) {
  const Field F3 = Field::make(3);
  EXPECT_FALSE(find_null_system(F3, 6, 3).has_value());
  EXPECT_TRUE(find_null_system(F3, 6, 2).has_value());
}

TEST(ConstructionsTest, HalfDimensionalSystemsExistWhenMZeroModFour) {
  for (int q : {3, 5, 7, 11}) {
    const Field F = Field::make(q);
    const auto sys = find_null_system(F, 4, 2);
    ASSERT_TRUE(sys.has_value()) << q;
    EXPECT_TRUE(is_null_system(F, sys->vectors));
  }
  const auto eight = find_null_system(Field::make(3), 8, 4);
  ASSERT_TRUE(eight.has_value());
  EXPECT_TRUE(is_null_system(Field::make(3), eight->vectors));
}

// Exhaustive maximum: the largest k for which any null system exists.
int brute_isotropic_dimension(const Field& F, int m) {
  int k = 0;
  while (find_null_system(F, m, k + 1).has_value()) ++k;
  return k;
}

TEST(ConstructionsTest, IsotropicDimensionFormulaMatchesSearch) {
  for (int q : {3, 5, 7, 11}) {
    const Field F = Field::make(q);
    for (int m = 1; m <= 6; ++m) {
      if (std::pow(q, m) > 2e6) continue;
      const Subspace H = max_isotropic_subspace(F, m);
      EXPECT_EQ(H.dimension(), isotropic_dimension(F, m)) << "q=" << q << " m=" << m;
      for (const auto& h : H.elements()) EXPECT_EQ(norm(F, h), F.zero());
      if (m <= 4) EXPECT_EQ(brute_isotropic_dimension(F, m), isotropic_dimension(F, m)) << "q=" << q << " m=" << m;
    }
  }
}

TEST(ConstructionsTest, IsotropicExamples) {
  const Field F5 = Field::make(5);
  const Subspace H5 = max_isotropic_subspace(F5, 2);
  EXPECT_EQ(H5.size(), 5u);
  EXPECT_TRUE(H5.contains(make_point(F5, {1, 2})));
  EXPECT_EQ(max_isotropic_subspace(Field::make(3), 2).size(), 1u);
  EXPECT_EQ(max_isotropic_subspace(Field::make(3), 3).size(), 3u);
}

TEST(ConstructionsTest, OmegaSizesAndMembership) {
  EXPECT_EQ(omega_subspace(Field::make(3), 4).size(), 3u);
  EXPECT_EQ(omega_subspace(Field::make(5), 4).size(), 25u);
  EXPECT_EQ(omega_subspace(Field::make(3), 5).size(), 9u);
  for (auto [q, n] : {std::pair{3, 4}, std::pair{5, 4}, std::pair{3, 5}, std::pair{7, 4}, std::pair{3, 6},
                      std::pair{5, 6}, std::pair{3, 8}}) {
    const Field F = Field::make(q);
    const Subspace W = omega_subspace(F, n);
    // |Omega| = q^{(n-1)/2}, q^{n/2} or q^{(n-2)/2} as dictated by n and eta(-1).
    const int h = isotropic_dimension(F, n - 2);
    EXPECT_EQ(W.dimension(), h + 1);
    for (const auto& x : W.elements()) EXPECT_TRUE(on_cone(F, x));
  }
  EXPECT_THROW(omega_subspace(Field::make(3), 2), DomainError);
}

TEST(ConstructionsTest, SpherePointCounts) {
  for (int q : {3, 5, 7, 9}) {
    const Field F = Field::of_order(q);
    for (int c = 1; c <= 4; ++c) {
      std::vector<long long> count(F.q(), 0);
      for (const auto& x : enumerate_points(F, c)) ++count[norm(F, x).code];
      for (std::uint32_t r = 0; r < F.q(); ++r) EXPECT_EQ(sphere_point_count(F, c, Scalar{r}), count[r]);
    }
  }
}

TEST(ConstructionsTest, SharpFamilyExamples) {
  const auto s = sharp_family(Field::make(3), 6, 1);
  EXPECT_EQ(s.regime_case, 1);
  EXPECT_EQ(s.points.size(), 72u);
  EXPECT_EQ(s.spheres.size(), 9u);
  EXPECT_EQ(s.incidences, 0);
  EXPECT_EQ(static_cast<long long>(s.points.size() * s.spheres.size()), 648);

  const auto s7 = sharp_family(Field::make(7), 6, 1);
  EXPECT_EQ(s7.spheres.size(), 147u);
  EXPECT_EQ(s7.points.size(), 1568u);
  EXPECT_EQ(s7.incidences, 0);

  EXPECT_THROW(sharp_family(Field::make(3), 4, 1, 1), DomainError);
  EXPECT_THROW(sharp_family(Field::make(3), 6, 2), DomainError);
  EXPECT_THROW(sharp_family(Field::make(3), 6, 0), DomainError);
  // Case 2 at d = 4 would need an empty null block.
  EXPECT_THROW(sharp_family(Field::make(5), 4, 1), DomainError);
}

TEST(ConstructionsTest, SharpFamilyInvariants) {
  struct Case {
    int q, d, k;
  };
  const std::vector<Case> cases = {{3, 6, 1}, {7, 6, 1}, {3, 10, 2}, {3, 8, 1}, {5, 6, 1}, {13, 6, 1},
                                   {5, 8, 2}, {3, 7, 1}, {5, 5, 1}, {3, 9, 1}, {13, 5, 1}, {5, 7, 2}};
  for (const auto& c : cases) {
    const Field F = Field::make(c.q);
    const auto s = sharp_family(F, c.d, c.k);
    SCOPED_TRACE("q=" + std::to_string(c.q) + " d=" + std::to_string(c.d) + " k=" + std::to_string(c.k));
    EXPECT_EQ(s.incidences, 0);
    EXPECT_EQ(incidence_count(F, s.points, s.spheres), 0);
    EXPECT_EQ(static_cast<long long>(s.points.size()), s.expected_points);
    EXPECT_EQ(static_cast<long long>(s.spheres.size()), s.expected_spheres);
    EXPECT_TRUE(is_null_system(F, s.null_vectors));
    EXPECT_EQ(static_cast<int>(s.null_vectors.size()), s.null_block / 2);
    EXPECT_LE(static_cast<double>(s.spheres.size()), small_family_threshold(F, c.d));
    const auto lifted = lift(F, WeightedFamily::uniform(s.spheres), c.d);
    EXPECT_EQ(lifted.points.size(), (F.q() - 1) * s.spheres.size());
    // |P||S| / q^{d+1} = (q^2 - 1) / (4 q^2) up to the sphere-size error q^{-(c-1)/2}.
    const double ratio = static_cast<double>(s.points.size()) * s.spheres.size() / std::pow(c.q, c.d + 1);
    const double main = (c.q * c.q - 1.0) / (4.0 * c.q * c.q);
    const double err = std::pow(c.q, -(c.d - s.null_block - 1) / 2.0);
    EXPECT_GE(ratio, main * (1 - err));
    EXPECT_LE(ratio, main * (1 + err));
    EXPECT_GE(ratio, 0.09);
    EXPECT_LE(ratio, 0.40);
    // Zero incidences at the threshold: the deviation is the whole main term.
    const auto dev = deviation_check(F, s.points, WeightedFamily::uniform(s.spheres), c.d);
    EXPECT_TRUE(dev.in_regime);
    EXPECT_TRUE(dev.pass);
  }
}

TEST(ConstructionsTest, SharpFamilyExportsAsInstance) {
  const Field F = Field::make(3);
  const auto s = sharp_family(F, 6, 1);
  const auto inst = instance_from_json(instance_to_json(to_instance(F, s)));
  EXPECT_EQ(inst.points, s.points);
  EXPECT_EQ(inst.family.spheres(), s.spheres);
  EXPECT_EQ(incidence_weighted(inst.field, inst.points, inst.family), Complex(0.0));
}

}  // namespace
}  // namespace conelab
