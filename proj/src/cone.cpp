#include "conelab/cone.hpp"

#include <cmath>
#include <ostream>

#include "conelab/error.hpp"
#include "conelab/parallel.hpp"

namespace conelab {

namespace {

void require_cone_dim(const FPoint& x) {
  if (x.dim() < 3) throw DomainError("cone dimension must be at least 3");
}

}  // namespace

bool on_cone(const Field& F, const FPoint& x) {
  require_cone_dim(x);
  const std::size_t n = x.dim();
  Scalar lhs = F.mul(x[n - 2], x[n - 1]);
  Scalar rhs = F.zero();
  for (std::size_t i = 0; i + 2 < n; ++i) rhs = F.add(rhs, F.square(x[i]));
  return lhs == rhs;
}

Scalar gamma(const Field& F, const FPoint& x) {
  require_cone_dim(x);
  const std::size_t n = x.dim();
  Scalar s = F.zero();
  for (std::size_t i = 0; i + 2 < n; ++i) s = F.add(s, F.square(x[i]));
  const Scalar four = F.from_int(4);
  return F.sub(s, F.mul(four, F.mul(x[n - 2], x[n - 1])));
}

long long cone_cardinality(const Field& F, int n) {
  if (n < 3) throw DomainError("cone dimension must be at least 3");
  long long qn1 = 1;
  for (int i = 0; i < n - 1; ++i) qn1 *= F.q();
  if (n % 2 == 1) return qn1;
  return qn1 + static_cast<long long>(F.q() - 1) * gauss_power_even(F, n - 2);
}

ConeVariety::ConeVariety(Field F, int n, std::vector<FPoint> points)
    : F_(std::move(F)), n_(n), points_(std::move(points)) {
  if (n_ < 3) throw DomainError("cone dimension must be at least 3");
  const PointIndexer ix(F_.q(), n_);
  slot_.assign(ix.size(), -1);
  indices_.reserve(points_.size());
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (points_[k].dim() != static_cast<std::size_t>(n_) || !on_cone(F_, points_[k])) {
      throw DomainError("cone point list contains a point off the cone");
    }
    const std::uint64_t i = ix.encode(points_[k]);
    if (slot_[i] >= 0) throw DomainError("cone point list has repeats");
    slot_[i] = static_cast<std::int32_t>(k);
    indices_.push_back(i);
  }
}

bool ConeVariety::contains(const FPoint& x) const { return position(x) >= 0; }

long long ConeVariety::position(const FPoint& x) const {
  if (x.dim() != static_cast<std::size_t>(n_)) throw DomainError("point dimension does not match cone");
  return slot_[PointIndexer(F_.q(), n_).encode(x)];
}

ConeVariety cone_enumerate(const Field& F, int n, std::uint64_t budget) {
  if (n < 3) throw DomainError("cone dimension must be at least 3");
  const std::uint64_t size = checked_grid_size(F.q(), n, budget);
  const PointIndexer ix(F.q(), n);
  std::vector<FPoint> pts;
  FPoint x;
  x.coords.resize(n);
  for (std::uint64_t i = 0; i < size; ++i) {
    ix.decode_into(i, x.coords);
    if (on_cone(F, x)) pts.push_back(x);
  }
  return ConeVariety(F, n, std::move(pts));
}

ConeKernel::ConeKernel(const Field& F, int n) : F_(F), n_(n) {
  if (n < 3) throw DomainError("cone dimension must be at least 3");
  const double q = F.q();
  const double qn = std::pow(q, n);
  if (n % 2 == 0) {
    const double g = static_cast<double>(gauss_power_even(F, n - 2));
    zero_ = 1.0 / q + (q - 1.0) * g / qn;
    dual_ = (q - 1.0) * g / qn;
    off_ = -g / qn;
  } else {
    zero_ = 1.0 / q;
    dual_ = 0.0;
    off_ = static_cast<double>(gauss_power_even(F, n - 1)) / qn;
  }
  CharacterTable chars(F);
  eta_neg_.resize(F.q());
  for (std::uint32_t c = 0; c < F.q(); ++c) eta_neg_[c] = chars.eta(F.neg(Scalar{c}));
}

double ConeKernel::from_gamma(bool is_zero, Scalar g) const {
  if (is_zero) return zero_;
  if (g.code == 0) return dual_;
  return n_ % 2 == 0 ? off_ : off_ * eta_neg_[g.code];
}

double ConeKernel::operator()(const FPoint& x) const {
  if (x.dim() != static_cast<std::size_t>(n_)) throw DomainError("point dimension does not match kernel");
  return from_gamma(x.is_zero(), gamma(F_, x));
}

Complex cone_ift_closed(const Field& F, const FPoint& x) {
  require_cone_dim(x);
  return ConeKernel(F, static_cast<int>(x.dim()))(x);
}

Complex cone_ift_brute(const ConeVariety& cone, const FPoint& x) {
  if (x.dim() != static_cast<std::size_t>(cone.dim())) throw DomainError("point dimension does not match cone");
  const Field& F = cone.field();
  CharacterTable chars(F);
  Complex acc{0.0, 0.0};
  for (const auto& xi : cone.points()) acc += chars.e(dot(F, x, xi));
  return acc / std::pow(static_cast<double>(F.q()), cone.dim());
}

Complex sigma_ift(const ConeVariety& cone, const FPoint& x) {
  const double scale = std::pow(static_cast<double>(cone.field().q()), cone.dim()) / static_cast<double>(cone.size());
  return cone_ift_closed(cone.field(), x) * scale;
}

Complex sigma_ift_brute(const ConeVariety& cone, const FPoint& x) {
  const double scale = std::pow(static_cast<double>(cone.field().q()), cone.dim()) / static_cast<double>(cone.size());
  return cone_ift_brute(cone, x) * scale;
}

void write_cone_csv(const ConeVariety& cone, std::ostream& out) {
  for (int i = 0; i < cone.dim(); ++i) out << (i ? ",x" : "x") << i + 1;
  out << '\n';
  for (const auto& x : cone.points()) {
    for (std::size_t i = 0; i < x.dim(); ++i) out << (i ? "," : "") << x[i].code;
    out << '\n';
  }
}

}  // namespace conelab
