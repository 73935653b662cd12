#include "conelab/characters.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "conelab/error.hpp"

namespace conelab {
namespace {

constexpr double kTol = 1e-9;

void expect_close(Complex a, Complex b, double tol = kTol) {
  EXPECT_NEAR(a.real(), b.real(), tol) << a << " vs " << b;
  EXPECT_NEAR(a.imag(), b.imag(), tol) << a << " vs " << b;
}

std::vector<Field> gauss_fields() {
  return {Field::make(3), Field::make(5), Field::make(7), Field::make(11),
          Field::make(3, 2, {1, 0, 1}), Field::make(3, 3, {1, 2, 0, 1}), Field::make(5, 2, {2, 0, 1})};
}

TEST(CharactersTest, AdditiveCharExamples) {
  const Field F3 = Field::make(3);
  expect_close(additive_char(F3, F3.zero()), {1.0, 0.0});
  const double a = 2.0 * std::numbers::pi / 3.0;
  expect_close(additive_char(F3, F3.one()), {std::cos(a), std::sin(a)});
  const Field F9 = Field::make(3, 2, {1, 0, 1});
  const std::vector<int> x = {0, 1};
  expect_close(additive_char(F9, F9.from_coeffs(x)), {1.0, 0.0});
}

TEST(CharactersTest, QuadraticCharExamples) {
  const Field F7 = Field::make(7);
  EXPECT_EQ(quadratic_char(F7, F7.from_int(3)), -1);
  EXPECT_EQ(quadratic_char(F7, F7.zero()), 0);
  const Field F5 = Field::make(5);
  EXPECT_EQ(quadratic_char(F5, F5.from_int(4)), 1);
}

TEST(CharactersTest, CharacterValuesAreUnitComplex) {
  for (const Field& F : gauss_fields()) {
    CharacterTable chars(F);
    for (std::uint32_t c = 0; c < F.q(); ++c) EXPECT_LE(std::abs(std::norm(chars.e(Scalar{c})) - 1.0), 1e-12);
  }
}

TEST(CharactersTest, Orthogonality) {
  for (const Field& F : gauss_fields()) {
    CharacterTable chars(F);
    const double q = F.q();
    for (std::uint32_t a = 0; a < F.q(); ++a) {
      Complex acc{0.0, 0.0};
      int eta_acc = 0;
      for (std::uint32_t t = 0; t < F.q(); ++t) {
        acc += chars.e_product(Scalar{a}, Scalar{t});
        if (a != 0 && t != 0) eta_acc += chars.eta(F.mul(Scalar{a}, Scalar{t}));
      }
      expect_close(acc, {a == 0 ? q : 0.0, 0.0}, kTol * q);
      EXPECT_EQ(eta_acc, 0);
    }
  }
}

TEST(CharactersTest, EtaIsMultiplicative) {
  for (const Field& F : gauss_fields()) {
    for (std::uint32_t a = 0; a < F.q(); ++a) {
      for (std::uint32_t b = 0; b < F.q(); ++b) {
        EXPECT_EQ(quadratic_char(F, F.mul(Scalar{a}, Scalar{b})),
                  quadratic_char(F, Scalar{a}) * quadratic_char(F, Scalar{b}));
      }
    }
  }
}

TEST(CharactersTest, GaussSumExamples) {
  const Field F3 = Field::make(3);
  expect_close(gauss_sum(F3, F3.one()).value, {0.0, std::sqrt(3.0)});
  expect_close(gauss_sum(F3, F3.from_int(2)).value, {0.0, -std::sqrt(3.0)});
  // Direct two-term sum for a = 2: eta(1) e(2) + eta(2) e(4) = e(2) - e(1).
  const Complex direct = additive_char(F3, F3.from_int(2)) - additive_char(F3, F3.one());
  expect_close(gauss_sum(F3, F3.from_int(2)).value, direct);
  const Field F5 = Field::make(5);
  expect_close(gauss_sum(F5, F5.one()).value, {std::sqrt(5.0), 0.0});
  EXPECT_THROW(gauss_sum(F5, F5.zero()), DomainError);
}

TEST(CharactersTest, GaussClosedFormExamples) {
  expect_close(gauss_closed_form(Field::make(3, 2, {1, 0, 1})), {3.0, 0.0});
  expect_close(gauss_closed_form(Field::make(7)), {0.0, std::sqrt(7.0)});
  expect_close(gauss_closed_form(Field::make(3, 3, {1, 2, 0, 1})), {0.0, -3.0 * std::sqrt(3.0)});
}

TEST(CharactersTest, GaussSumMatchesClosedFormAndModulus) {
  for (const Field& F : gauss_fields()) {
    SCOPED_TRACE(F.name());
    const double sq = std::sqrt(static_cast<double>(F.q()));
    for (std::uint32_t a = 1; a < F.q(); ++a) {
      const GaussValue g = gauss_sum(F, Scalar{a});
      EXPECT_NEAR(std::abs(g.value), sq, 1e-9 * sq);
      expect_close(g.value, g.closed_form, 1e-9 * sq);
    }
  }
}

TEST(CharactersTest, GaussSumIndependentOfModulus) {
  const Field A = Field::make(3, 2, {1, 0, 1});
  const Field B = Field::make(3, 2, {2, 1, 1});
  expect_close(gauss_sum(A, A.one()).value, gauss_sum(B, B.one()).value);
  expect_close(gauss_sum(A, A.one()).value, {3.0, 0.0});
}

TEST(CharactersTest, GaussPowerSign) {
  EXPECT_EQ(gauss_power_sign(Field::make(3), 4), Complex(-3.0, 0.0));
  EXPECT_EQ(gauss_power_sign(Field::make(7), 8), Complex(-343.0, 0.0));
  expect_close(gauss_power_sign(Field::make(5), 4), {5.0, 0.0});
  EXPECT_EQ(gauss_power_even(Field::make(3), 2), -3);
  EXPECT_EQ(gauss_power_even(Field::make(5), 4), 25);
  // q = 3 mod 4, n = 0 mod 4 => G^{n-2} = -q^{(n-2)/2}, also for a degree-3 extension.
  const Field F27 = Field::make(3, 3, {1, 2, 0, 1});
  EXPECT_NEAR(gauss_power_sign(F27, 4).real(), -27.0, 1e-9);
  EXPECT_EQ(gauss_power_sign(F27, 4).imag(), 0.0);
}

TEST(CharactersTest, GaussPowerAgreesWithRepeatedProduct) {
  for (const Field& F : gauss_fields()) {
    const Complex g = gauss_sum(F, F.one()).value;
    Complex acc{1.0, 0.0};
    for (int m = 0; m <= 6; ++m) {
      expect_close(gauss_power(F, m), acc, 1e-8 * std::abs(acc));
      if (m % 2 == 0) EXPECT_NEAR(gauss_power(F, m).real(), static_cast<double>(gauss_power_even(F, m)), 1e-6);
      acc *= g;
    }
  }
}

TEST(CharactersTest, SquareSumIdentity) {
  for (const Field& F : gauss_fields()) {
    CharacterTable chars(F);
    const Complex g1 = gauss_closed_form(F);
    for (std::uint32_t a = 1; a < F.q(); ++a) {
      Complex acc{0.0, 0.0};
      for (std::uint32_t s = 0; s < F.q(); ++s) acc += chars.e(F.mul(Scalar{a}, F.square(Scalar{s})));
      expect_close(acc, static_cast<double>(chars.eta(Scalar{a})) * g1, 1e-9 * F.q());
    }
  }
}

TEST(CharactersTest, QuadExpSumExamples) {
  const Field F3 = Field::make(3);
  const FPoint zero1 = make_point(F3, {0});
  expect_close(quad_exp_sum(F3, F3.one(), zero1), {0.0, std::sqrt(3.0)});
  const double a = 2.0 * std::numbers::pi / 3.0;
  expect_close(quad_exp_sum_brute(F3, F3.one(), zero1), Complex(1.0, 0.0) + 2.0 * Complex(std::cos(a), std::sin(a)));
  const FPoint zero2 = make_point(F3, {0, 0});
  expect_close(quad_exp_sum(F3, F3.one(), zero2), {-3.0, 0.0});
  expect_close(quad_exp_sum_brute(F3, F3.one(), zero2), {-3.0, 0.0});
  EXPECT_THROW(quad_exp_sum(F3, F3.zero(), zero1), DomainError);
  // Even k with q = 3 mod 4 and beta = 0 gives a real value.
  const Field F7 = Field::make(7);
  EXPECT_EQ(quad_exp_sum(F7, F7.one(), make_point(F7, {0, 0, 0, 0})).imag(), 0.0);
}

TEST(CharactersTest, QuadExpSumClosedFormMatchesBruteForce) {
  std::mt19937_64 rng(7);
  for (int q : {3, 5, 7, 11}) {
    const Field F = Field::make(q);
    std::uniform_int_distribution<int> coord(0, q - 1);
    for (int k = 1; k <= 3; ++k) {
      for (int s = 1; s < q; ++s) {
        FPoint beta(k);
        for (int i = 0; i < k; ++i) beta[i] = F.from_int(coord(rng));
        const double scale = std::pow(static_cast<double>(q), k);
        expect_close(quad_exp_sum(F, F.from_int(s), beta), quad_exp_sum_brute(F, F.from_int(s), beta), 1e-9 * scale);
      }
    }
  }
}

}  // namespace
}  // namespace conelab
