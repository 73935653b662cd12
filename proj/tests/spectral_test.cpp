#include "conelab/spectral.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "conelab/error.hpp"

namespace conelab {
namespace {

GridFn random_grid(const Field& F, int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  GridFn g(F, n);
  for (auto& v : g.values()) v = {nd(rng), nd(rng)};
  return g;
}

double max_diff(const GridFn& a, const GridFn& b) {
  double m = 0.0;
  for (std::uint64_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

TEST(SpectralTest, FourierOfDeltaAndConstant) {
  const Field F3 = Field::make(3);
  GridFn delta(F3, 1);
  delta[0] = 1.0;
  const GridFn delta_hat = fourier(delta);
  for (const auto& v : delta_hat.values()) EXPECT_NEAR(std::abs(v - Complex(1.0)), 0.0, 1e-12);

  GridFn one(F3, 1);
  for (auto& v : one.values()) v = 1.0;
  const GridFn hat = fourier(one);
  EXPECT_NEAR(std::abs(hat[0] - Complex(3.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(hat[1]), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(hat[2]), 0.0, 1e-12);
}

TEST(SpectralTest, InverseOfConstantAndDelta) {
  const Field F5 = Field::make(5);
  GridFn one(F5, 2);
  for (auto& v : one.values()) v = 1.0;
  const GridFn check = inverse_fourier(one);
  for (std::uint64_t i = 0; i < check.size(); ++i) EXPECT_NEAR(std::abs(check[i] - Complex(i == 0 ? 1.0 : 0.0)), 0.0, 1e-12);

  GridFn delta(F5, 2);
  delta[0] = 1.0;
  const GridFn delta_check = inverse_fourier(delta);
  for (const auto& v : delta_check.values()) EXPECT_NEAR(std::abs(v - Complex(1.0 / 25.0)), 0.0, 1e-12);
}

TEST(SpectralTest, RoundTrips) {
  std::mt19937_64 rng(1);
  const Field F7 = Field::make(7);
  const GridFn g = random_grid(F7, 2, rng);
  EXPECT_LT(max_diff(inverse_fourier(fourier(g)), g), 1e-9);
  const Field F5 = Field::make(5);
  const GridFn f = random_grid(F5, 2, rng);
  EXPECT_LT(max_diff(fourier(inverse_fourier(f)), f), 1e-9);
  const Field F9 = Field::make(3, 2, {1, 0, 1});
  const GridFn h = random_grid(F9, 2, rng);
  EXPECT_LT(max_diff(fourier(inverse_fourier(h)), h), 1e-9);
}

TEST(SpectralTest, SeparableMatchesNaive) {
  std::mt19937_64 rng(2);
  for (const Field& F : {Field::make(3), Field::make(5), Field::make(3, 2, {1, 0, 1})}) {
    for (int n = 1; n <= 3; ++n) {
      if (std::pow(F.q(), n) > 729) continue;
      const GridFn g = random_grid(F, n, rng);
      EXPECT_LT(max_diff(fourier(g), fourier_naive(g)), 1e-9);
      EXPECT_LT(max_diff(inverse_fourier(g), inverse_fourier_naive(g)), 1e-9);
    }
  }
}

TEST(SpectralTest, NaiveTransformRespectsBudget) {
  const Field F7 = Field::make(7);
  GridFn g(F7, 3);
  EXPECT_THROW(fourier_naive(g, 1000), BudgetExceeded);
}

TEST(SpectralTest, Plancherel) {
  std::mt19937_64 rng(3);
  for (auto [q, n] : {std::pair{3, 4}, std::pair{5, 3}, std::pair{7, 2}}) {
    const Field F = Field::make(q);
    for (int trial = 0; trial < 100; ++trial) {
      const GridFn g = random_grid(F, n, rng);
      const GridFn hat = fourier(g);
      double lhs = 0.0, rhs = 0.0;
      for (const auto& v : hat.values()) lhs += std::norm(v);
      for (const auto& v : g.values()) rhs += std::norm(v);
      lhs /= static_cast<double>(g.size());
      EXPECT_NEAR(lhs, rhs, 1e-9 * rhs);
    }
  }
}

TEST(SpectralTest, ExtensionPathsAgreeAndDuality) {
  std::mt19937_64 rng(4);
  const Field F5 = Field::make(5);
  // Support: a random 20-point subset of F_5^3.
  auto pts = enumerate_points(F5, 3);
  std::shuffle(pts.begin(), pts.end(), rng);
  pts.resize(20);
  const SurfaceMeasure sigma(pts);
  std::normal_distribution<double> nd;
  std::vector<Complex> f(sigma.size());
  for (auto& v : f) v = {nd(rng), nd(rng)};
  const GridFn ext = extension(F5, sigma, f);
  EXPECT_LT(max_diff(ext, extension_direct(F5, sigma, f)), 1e-12);

  const GridFn g = random_grid(F5, 3, rng);
  const GridFn ghat = fourier(g);
  Complex lhs{0.0, 0.0}, rhs{0.0, 0.0};
  for (std::uint64_t i = 0; i < g.size(); ++i) lhs += ext[i] * std::conj(g[i]);
  for (std::size_t k = 0; k < sigma.size(); ++k) rhs += f[k] * std::conj(ghat.at(sigma.support()[k]));
  rhs *= sigma.mass();
  EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-9 * std::abs(rhs));
}

TEST(SpectralTest, ExtensionOfDeltaHasConstantModulus) {
  const Field F3 = Field::make(3);
  const SurfaceMeasure sigma({make_point(F3, {1, 2}), make_point(F3, {0, 1}), make_point(F3, {2, 2})});
  const std::vector<Complex> f = {0.0, 1.0, 0.0};
  const GridFn ext = extension(F3, sigma, f);
  for (const auto& v : ext.values()) EXPECT_NEAR(std::abs(v), 1.0 / 3.0, 1e-12);
  const std::vector<Complex> ones = {1.0, 1.0, 1.0};
  EXPECT_NEAR(std::abs(extension(F3, sigma, ones)[0] - Complex(1.0)), 0.0, 1e-12);
  EXPECT_THROW(extension(F3, sigma, std::vector<Complex>{1.0}), DomainError);
}

TEST(SpectralTest, SurfaceMeasureValidates) {
  const Field F3 = Field::make(3);
  EXPECT_THROW(SurfaceMeasure({}), DomainError);
  EXPECT_THROW(SurfaceMeasure({make_point(F3, {1}), make_point(F3, {1})}), DomainError);
}

TEST(SpectralTest, Norms) {
  std::vector<Complex> ones(9, 1.0);
  EXPECT_NEAR(lr_counting_norm(ones, Rational(2)), 3.0, 1e-12);
  std::vector<Complex> delta(9, 0.0);
  delta[4] = 1.0;
  for (auto r : {Rational(1), Rational(3, 2), Rational(5), Rational::infinity()}) {
    EXPECT_NEAR(lr_counting_norm(delta, r), 1.0, 1e-12);
  }
  std::vector<Complex> c(5, Complex(0.0, -2.5));
  EXPECT_NEAR(lr_counting_norm(c, Rational::infinity()), 2.5, 1e-12);
  EXPECT_THROW(lr_counting_norm(c, Rational(1, 2)), DomainError);

  for (auto p : {Rational(1), Rational(2), Rational(10, 3)}) EXPECT_NEAR(lp_surface_norm(ones, p), 1.0, 1e-12);
  std::vector<Complex> cone_delta(21, 0.0);
  cone_delta[0] = 1.0;
  EXPECT_NEAR(lp_surface_norm(cone_delta, Rational(2)), 1.0 / std::sqrt(21.0), 1e-12);
  std::vector<Complex> twos(7, 2.0);
  EXPECT_NEAR(lp_surface_norm(twos, Rational(3)), 2.0, 1e-12);
  EXPECT_THROW(lp_surface_norm(twos, Rational(0)), DomainError);
}

TEST(SpectralTest, RationalParsing) {
  EXPECT_EQ(Rational::parse("10/3"), Rational(10, 3));
  EXPECT_EQ(Rational::parse("6/2"), Rational(3));
  EXPECT_TRUE(Rational::parse("inf").is_infinite());
  EXPECT_EQ(Rational(3).conjugate(), Rational(3, 2));
  EXPECT_TRUE(Rational(1).conjugate().is_infinite());
  EXPECT_EQ(Rational(5, 2).str(), "5/2");
  EXPECT_THROW(Rational::parse("3/0"), ConfigError);
  EXPECT_THROW(Rational::parse("x"), ConfigError);
}

TEST(SpectralTest, SerializationRoundTrip) {
  std::mt19937_64 rng(5);
  const Field F3 = Field::make(3);
  const GridFn g = random_grid(F3, 3, rng);
  std::stringstream csv;
  write_csv(g, csv);
  EXPECT_EQ(max_diff(read_csv(F3, 3, csv), g), 0.0);
  std::stringstream bin;
  write_binary(g, bin);
  EXPECT_EQ(max_diff(read_binary(F3, bin), g), 0.0);
  std::stringstream bad("nope\n");
  EXPECT_THROW(read_csv(F3, 3, bad), ConfigError);
}

}  // namespace
}  // namespace conelab
