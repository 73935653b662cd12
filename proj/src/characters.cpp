#include "conelab/characters.hpp"

#include <cmath>
#include <numbers>

#include "conelab/error.hpp"

namespace conelab {

namespace {

Complex unit_root(int k, int p) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p);
  return {std::cos(angle), std::sin(angle)};
}

// i^k for integer k, exact.
Complex i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

CharacterTable::CharacterTable(Field F) : F_(std::move(F)) {
  const std::uint32_t q = F_.q();
  additive_.resize(q);
  quadratic_.resize(q);
  for (std::uint32_t c = 0; c < q; ++c) {
    const Scalar t{c};
    additive_[c] = unit_root(F_.trace(t), F_.p());
    quadratic_[c] = c == 0 ? 0 : (F_.is_square(t) ? 1 : -1);
  }
}

Complex additive_char(const Field& F, Scalar t) { return unit_root(F.trace(t), F.p()); }

int quadratic_char(const Field& F, Scalar t) {
  if (t.code == 0) return 0;
  return F.is_square(t) ? 1 : -1;
}

GaussValue gauss_sum(const Field& F, Scalar a) {
  if (a.code == 0) throw DomainError("Gauss sum G_0 is not defined");
  Complex acc{0.0, 0.0};
  for (std::uint32_t c = 1; c < F.q(); ++c) {
    const Scalar t{c};
    acc += static_cast<double>(quadratic_char(F, t)) * additive_char(F, F.mul(a, t));
  }
  return GaussValue{acc, a, static_cast<double>(quadratic_char(F, a)) * gauss_closed_form(F)};
}

Complex gauss_closed_form(const Field& F) { return gauss_power(F, 1); }

Complex gauss_power(const Field& F, int m) {
  if (m < 0) throw DomainError("negative Gauss sum power");
  // G_1 = sign * i^j * sqrt(q) with sign = (-1)^{ell-1}, j = ell or 0.
  const int sign_exp = (F.ell() - 1) * m;
  const int i_exp = F.p() % 4 == 3 ? F.ell() * m : 0;
  const double magnitude = std::pow(static_cast<double>(F.q()), 0.5 * m);
  const double sign = sign_exp % 2 == 0 ? 1.0 : -1.0;
  return sign * magnitude * i_power(i_exp);
}

Complex gauss_power_sign(const Field& F, int n) { return gauss_power(F, n - 2); }

long long gauss_power_even(const Field& F, int m) {
  if (m < 0 || m % 2 != 0) throw DomainError("gauss_power_even needs an even nonnegative power");
  // G_1^2 = eta(-1) q.
  const long long base = F.minus_one_is_square() ? static_cast<long long>(F.q()) : -static_cast<long long>(F.q());
  long long r = 1;
  for (int i = 0; i < m / 2; ++i) r *= base;
  return r;
}

Complex quad_exp_sum(const Field& F, Scalar s, const FPoint& beta) {
  if (s.code == 0) throw DomainError("quad_exp_sum requires s != 0");
  const int k = static_cast<int>(beta.dim());
  if (k < 1) throw DomainError("quad_exp_sum requires k >= 1");
  const int eta_s = quadratic_char(F, s);
  const double eta_k = (k % 2 == 0 || eta_s == 1) ? 1.0 : -1.0;
  const Scalar minus_four_s = F.neg(F.mul(F.from_int(4), s));
  const Scalar phase = F.div(norm(F, beta), minus_four_s);
  return eta_k * gauss_power(F, k) * additive_char(F, phase);
}

Complex quad_exp_sum_brute(const Field& F, Scalar s, const FPoint& beta, std::uint64_t budget) {
  const int k = static_cast<int>(beta.dim());
  const std::uint64_t size = checked_grid_size(F.q(), k, budget);
  CharacterTable chars(F);
  PointIndexer ix(F.q(), k);
  FPoint alpha(k);
  Complex acc{0.0, 0.0};
  for (std::uint64_t i = 0; i < size; ++i) {
    ix.decode_into(i, alpha.coords);
    const Scalar arg = F.add(F.mul(s, norm(F, alpha)), dot(F, beta, alpha));
    acc += chars.e(arg);
  }
  return acc;
}

}  // namespace conelab
