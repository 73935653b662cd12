#pragma once

// The cone C_n = {xi : xi_{n-1} xi_n = xi_1^2 + ... + xi_{n-2}^2}, its dual
// form Gamma(x) = x_1^2 + ... + x_{n-2}^2 - 4 x_{n-1} x_n and the inverse
// Fourier transform C_n^v(x) = q^{-n} sum_{xi in C_n} e(x.xi).

#include <iosfwd>
#include <vector>

#include "conelab/characters.hpp"
#include "conelab/field.hpp"

namespace conelab {

bool on_cone(const Field& F, const FPoint& x);
Scalar gamma(const Field& F, const FPoint& x);
inline bool in_dual_cone(const Field& F, const FPoint& x) { return gamma(F, x).code == 0; }

// Exact |C_n|: q^{n-1} + (q-1) G_1^{n-2} for even n, q^{n-1} for odd n.
long long cone_cardinality(const Field& F, int n);

class ConeVariety {
 public:
  ConeVariety(Field F, int n, std::vector<FPoint> points);

  const Field& field() const { return F_; }
  int dim() const { return n_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<FPoint>& points() const { return points_; }
  // Grid indices (coordinate 0 fastest) of the points, in the same order.
  const std::vector<std::uint64_t>& indices() const { return indices_; }
  bool contains(const FPoint& x) const;
  // Position of x in points(), or -1.
  long long position(const FPoint& x) const;

 private:
  Field F_;
  int n_;
  std::vector<FPoint> points_;
  std::vector<std::uint64_t> indices_;
  std::vector<std::int32_t> slot_;  // grid index -> position, -1 off the cone
};

ConeVariety cone_enumerate(const Field& F, int n, std::uint64_t budget = kDefaultBudget);

// The closed form takes only three (even n) or four (odd n) distinct values,
// so they are computed once and looked up from Gamma.
class ConeKernel {
 public:
  ConeKernel(const Field& F, int n);

  int dim() const { return n_; }
  double at_zero() const { return zero_; }
  double on_dual() const { return dual_; }
  // Off C_n*: for even n this is the only value; for odd n it is multiplied by eta(-Gamma).
  double off_dual() const { return off_; }
  double operator()(const FPoint& x) const;
  double from_gamma(bool is_zero, Scalar g) const;

 private:
  Field F_;
  int n_;
  double zero_ = 0.0, dual_ = 0.0, off_ = 0.0;
  std::vector<int> eta_neg_;  // eta(-t) by code
};

Complex cone_ift_closed(const Field& F, const FPoint& x);
Complex cone_ift_brute(const ConeVariety& cone, const FPoint& x);
// dsigma^v(x) = (q^n / |C_n|) C_n^v(x).
Complex sigma_ift(const ConeVariety& cone, const FPoint& x);
Complex sigma_ift_brute(const ConeVariety& cone, const FPoint& x);

// "x1,...,xn" header, one row per point with element codes.
void write_cone_csv(const ConeVariety& cone, std::ostream& out);

}  // namespace conelab
