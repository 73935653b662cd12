#pragma once

// Exact arithmetic in F_{p^ell} (odd characteristic), vectors in F^n and
// the small amount of linear algebra the rest of the library needs.
//
// Elements are stored by their canonical code: the coefficient vector
// (c_0, ..., c_{ell-1}) of c_0 + c_1 x + ... read as the base-p integer
// c_0 + c_1 p + ... + c_{ell-1} p^{ell-1}. The prime subfield therefore
// occupies codes 0..p-1 and element order is the numeric order of codes.
// All arithmetic goes through q x q tables built once per field.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace conelab {

// Default limit on the number of grid points any single enumeration or
// dense transform may touch.
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 26;

// Largest field order for which the arithmetic tables are built.
inline constexpr std::uint32_t kMaxFieldOrder = 1024;

struct Scalar {
  std::uint32_t code = 0;

  friend constexpr auto operator<=>(Scalar, Scalar) = default;
};

struct FPoint {
  std::vector<Scalar> coords;

  FPoint() = default;
  explicit FPoint(std::size_t n) : coords(n) {}
  explicit FPoint(std::vector<Scalar> c) : coords(std::move(c)) {}

  std::size_t dim() const { return coords.size(); }
  Scalar& operator[](std::size_t i) { return coords[i]; }
  Scalar operator[](std::size_t i) const { return coords[i]; }
  bool is_zero() const;

  friend auto operator<=>(const FPoint&, const FPoint&) = default;
};

// An immutable finite field of odd characteristic. Copies share tables.
class Field {
 public:
  // make_field: validates p (odd prime), ell >= 1 and, when ell > 1, the
  // modulus (monic, degree ell, irreducible). The modulus is given low
  // degree first; the leading 1 may be included or omitted.
  static Field make(int p, int ell = 1, std::vector<int> modulus = {});

  // Field of order q = p^ell. For ell > 1 the first monic irreducible of
  // degree ell in canonical order is used as modulus.
  static Field of_order(std::uint32_t q);

  int p() const { return t_->p; }
  int ell() const { return t_->ell; }
  std::uint32_t q() const { return t_->q; }
  const std::vector<int>& modulus() const { return t_->modulus; }
  std::string name() const;

  Scalar zero() const { return Scalar{0}; }
  Scalar one() const { return Scalar{1}; }
  // Image of an integer in the prime subfield.
  Scalar from_int(long long v) const;
  Scalar from_coeffs(std::span<const int> coeffs) const;
  std::vector<int> coeffs(Scalar a) const;
  Scalar element(std::uint32_t code) const;

  Scalar add(Scalar a, Scalar b) const { return Scalar{t_->add[idx(a, b)]}; }
  Scalar mul(Scalar a, Scalar b) const { return Scalar{t_->mul[idx(a, b)]}; }
  Scalar neg(Scalar a) const { return Scalar{t_->neg[a.code]}; }
  Scalar sub(Scalar a, Scalar b) const { return add(a, neg(b)); }
  // Throws DomainError for a = 0.
  Scalar inv(Scalar a) const;
  Scalar div(Scalar a, Scalar b) const { return mul(a, inv(b)); }
  Scalar pow(Scalar a, std::uint64_t e) const;
  Scalar square(Scalar a) const { return mul(a, a); }

  // Absolute trace to Z_p, returned as a residue in [0, p).
  int trace(Scalar a) const { return t_->trace[a.code]; }
  // True iff a = s^2 for some s in F*. Throws DomainError for a = 0.
  bool is_square(Scalar a) const;
  // eta(-1) = 1 iff q = 1 mod 4.
  bool minus_one_is_square() const { return q() % 4 == 1; }

  friend bool operator==(const Field& a, const Field& b) { return a.t_ == b.t_; }

 private:
  struct Tables {
    int p = 0;
    int ell = 0;
    std::uint32_t q = 0;
    std::vector<int> modulus;
    std::vector<std::uint16_t> add;
    std::vector<std::uint16_t> mul;
    std::vector<std::uint16_t> neg;
    std::vector<std::uint16_t> inv;
    std::vector<std::uint8_t> square;
    std::vector<int> trace;
  };
  explicit Field(std::shared_ptr<const Tables> t) : t_(std::move(t)) {}
  std::size_t idx(Scalar a, Scalar b) const {
    return static_cast<std::size_t>(a.code) * t_->q + b.code;
  }

  std::shared_ptr<const Tables> t_;
};

bool is_prime(long long n);

// Vector operations over a field.
FPoint add(const Field& F, const FPoint& a, const FPoint& b);
FPoint sub(const Field& F, const FPoint& a, const FPoint& b);
FPoint scale(const Field& F, Scalar s, const FPoint& a);
Scalar dot(const Field& F, const FPoint& a, const FPoint& b);
// Sum-of-squares form ||x|| = x_1^2 + ... + x_n^2.
Scalar norm(const Field& F, const FPoint& x);
FPoint make_point(const Field& F, std::initializer_list<long long> values);

// Mixed-radix bijection between F^n and [0, q^n), coordinate 0 fastest.
class PointIndexer {
 public:
  PointIndexer(std::uint32_t q, int n);
  std::uint64_t size() const { return size_; }
  int dim() const { return n_; }
  std::uint64_t encode(const FPoint& x) const;
  FPoint decode(std::uint64_t index) const;
  // Writes the coordinates of `index` into out (length n).
  void decode_into(std::uint64_t index, std::span<Scalar> out) const;

 private:
  std::uint32_t q_;
  int n_;
  std::uint64_t size_;
};

// q^n, throwing BudgetExceeded when it exceeds `budget`.
std::uint64_t checked_grid_size(std::uint32_t q, int n, std::uint64_t budget = kDefaultBudget);

// Every point of F^n, in canonical order.
std::vector<FPoint> enumerate_points(const Field& F, int n, std::uint64_t budget = kDefaultBudget);

// Rank of a list of vectors of common dimension.
int rank(const Field& F, std::span<const FPoint> vectors);

class Subspace {
 public:
  Subspace(Field F, int ambient_dim, std::vector<FPoint> basis);

  int ambient_dim() const { return n_; }
  int dimension() const { return static_cast<int>(basis_.size()); }
  const std::vector<FPoint>& basis() const { return basis_; }
  // q^dimension
  std::uint64_t size() const;
  bool contains(const FPoint& x) const;
  // All elements, enumerated by coefficient vectors in canonical order.
  std::vector<FPoint> elements(std::uint64_t budget = kDefaultBudget) const;

 private:
  Field F_;
  int n_;
  std::vector<FPoint> basis_;
};

// The F-linear span of a nonempty list of vectors.
Subspace span(const Field& F, std::span<const FPoint> vectors);

}  // namespace conelab
