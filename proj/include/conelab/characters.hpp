#pragma once

// The canonical additive character e(t) = exp(2 pi i Tr(t) / p), the
// quadratic character eta (with eta(0) = 0), Gauss sums and the quadratic
// exponential sums obtained by completing the square.

#include <complex>
#include <vector>

#include "conelab/field.hpp"

namespace conelab {

using Complex = std::complex<double>;

// Precomputed e(t) and eta(t) for every element of a field.
class CharacterTable {
 public:
  explicit CharacterTable(Field F);

  const Field& field() const { return F_; }
  const Complex& e(Scalar t) const { return additive_[t.code]; }
  int eta(Scalar t) const { return quadratic_[t.code]; }
  // e(a * b), the kernel of every transform in the library.
  Complex e_product(Scalar a, Scalar b) const { return additive_[F_.mul(a, b).code]; }

 private:
  Field F_;
  std::vector<Complex> additive_;
  std::vector<int> quadratic_;
};

Complex additive_char(const Field& F, Scalar t);

// eta(t) in {-1, 0, 1}; 0 exactly at t = 0.
int quadratic_char(const Field& F, Scalar t);

struct GaussValue {
  Complex value;
  Scalar a;
  // Closed form eta(a) * G_1.
  Complex closed_form;
};

// G_a = sum_{t in F*} eta(t) e(a t), evaluated by direct summation.
// Throws DomainError for a = 0.
GaussValue gauss_sum(const Field& F, Scalar a);

// G_1 from its explicit value: (-1)^{ell-1} sqrt(q) when p = 1 mod 4,
// (-1)^{ell-1} i^ell sqrt(q) when p = 3 mod 4.
Complex gauss_closed_form(const Field& F);

// G_1^m from the closed form with the sign and power of i tracked exactly;
// real and imaginary parts that vanish are exactly zero.
Complex gauss_power(const Field& F, int m);

// G_1^{n-2}. When q = 3 mod 4 and n = 0 mod 4 this is -q^{(n-2)/2}.
Complex gauss_power_sign(const Field& F, int n);

// Exact real value of G_1^m for even m: (eta(-1) q)^{m/2}.
long long gauss_power_even(const Field& F, int m);

// sum_{alpha in F^k} e(s alpha.alpha + beta.alpha) by the closed form
// eta(s)^k G_1^k e(||beta|| / (-4s)). Throws DomainError for s = 0.
Complex quad_exp_sum(const Field& F, Scalar s, const FPoint& beta);

// The same sum by direct enumeration of F^k.
Complex quad_exp_sum_brute(const Field& F, Scalar s, const FPoint& beta,
                           std::uint64_t budget = kDefaultBudget);

}  // namespace conelab
