#include "conelab/field.hpp"

#include <algorithm>
#include <sstream>

#include "conelab/error.hpp"

namespace conelab {

namespace {

using Poly = std::vector<int>;  // low degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial m, coefficients mod p.
Poly poly_mod(Poly a, const Poly& m, int p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const int lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = ((a[shift + i] - lead * m[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

// Enumerate monic polynomials of degree `deg` in canonical order.
Poly monic_from_index(std::uint64_t index, int deg, int p) {
  Poly f(deg + 1, 0);
  for (int i = 0; i < deg; ++i) {
    f[i] = static_cast<int>(index % p);
    index /= p;
  }
  f[deg] = 1;
  return f;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

bool irreducible(const Poly& f, int p) {
  const int deg = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= deg / 2; ++d) {
    const std::uint64_t count = ipow(p, d);
    for (std::uint64_t i = 0; i < count; ++i) {
      if (poly_mod(f, monic_from_index(i, d, p), p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool FPoint::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](Scalar s) { return s.code == 0; });
}

Field Field::make(int p, int ell, std::vector<int> modulus) {
  if (!is_prime(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
  if (p == 2) throw DomainError("characteristic 2 is not supported");
  if (ell < 1) throw DomainError("extension degree must be >= 1");
  const std::uint64_t q64 = ipow(static_cast<std::uint64_t>(p), ell);
  if (q64 > kMaxFieldOrder) throw DomainError("field order " + std::to_string(q64) + " exceeds table limit");
  const auto q = static_cast<std::uint32_t>(q64);

  Poly m;
  if (ell > 1) {
    if (modulus.empty()) throw DomainError("a modulus is required for ell > 1");
    for (int& c : modulus) c = ((c % p) + p) % p;
    if (static_cast<int>(modulus.size()) == ell) modulus.push_back(1);
    if (static_cast<int>(modulus.size()) != ell + 1 || modulus.back() != 1) {
      throw DomainError("modulus must be monic of degree ell");
    }
    if (!irreducible(modulus, p)) throw DomainError("modulus is reducible");
    m = modulus;
  } else if (!modulus.empty()) {
    throw DomainError("a modulus is only meaningful for ell > 1");
  }

  auto t = std::make_shared<Tables>();
  t->p = p;
  t->ell = ell;
  t->q = q;
  t->modulus = m;

  std::vector<Poly> elems(q);
  for (std::uint32_t c = 0; c < q; ++c) {
    Poly a(ell);
    std::uint32_t v = c;
    for (int i = 0; i < ell; ++i) {
      a[i] = static_cast<int>(v % p);
      v /= p;
    }
    elems[c] = a;
  }
  auto code_of = [&](Poly a) {
    a.resize(ell, 0);
    std::uint32_t c = 0;
    for (int i = ell - 1; i >= 0; --i) c = c * p + static_cast<std::uint32_t>(a[i]);
    return static_cast<std::uint16_t>(c);
  };

  const std::size_t qq = static_cast<std::size_t>(q) * q;
  t->add.resize(qq);
  t->mul.resize(qq);
  for (std::uint32_t a = 0; a < q; ++a) {
    for (std::uint32_t b = 0; b < q; ++b) {
      Poly s(ell);
      for (int i = 0; i < ell; ++i) s[i] = (elems[a][i] + elems[b][i]) % p;
      t->add[a * q + b] = code_of(s);
      if (ell == 1) {
        t->mul[a * q + b] = static_cast<std::uint16_t>((static_cast<std::uint64_t>(a) * b) % p);
      } else {
        Poly prod(2 * ell - 1, 0);
        for (int i = 0; i < ell; ++i) {
          for (int j = 0; j < ell; ++j) prod[i + j] = (prod[i + j] + elems[a][i] * elems[b][j]) % p;
        }
        t->mul[a * q + b] = code_of(poly_mod(prod, m, p));
      }
    }
  }

  t->neg.resize(q);
  t->inv.assign(q, 0);
  t->square.assign(q, 0);
  for (std::uint32_t a = 0; a < q; ++a) {
    for (std::uint32_t b = 0; b < q; ++b) {
      if (t->add[a * q + b] == 0) t->neg[a] = static_cast<std::uint16_t>(b);
      if (t->mul[a * q + b] == 1) t->inv[a] = static_cast<std::uint16_t>(b);
    }
    if (a != 0) t->square[t->mul[a * q + a]] = 1;
  }

  // Tr(a) = a + a^p + ... + a^{p^{ell-1}}; lands in the prime subfield.
  t->trace.resize(q);
  for (std::uint32_t a = 0; a < q; ++a) {
    std::uint32_t frob = a;
    std::uint32_t acc = 0;
    for (int k = 0; k < ell; ++k) {
      acc = t->add[acc * q + frob];
      std::uint32_t next = 1;
      for (int i = 0; i < p; ++i) next = t->mul[next * q + frob];
      frob = next;
    }
    if (acc >= static_cast<std::uint32_t>(p)) throw Error("internal: trace left the prime subfield");
    t->trace[a] = static_cast<int>(acc);
  }
  return Field(std::move(t));
}

Field Field::of_order(std::uint32_t q) {
  int p = 0;
  for (int d = 2; static_cast<std::uint32_t>(d) <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) throw DomainError("invalid field order " + std::to_string(q));
  int ell = 0;
  std::uint32_t v = q;
  while (v % p == 0) {
    v /= p;
    ++ell;
  }
  if (v != 1) throw DomainError(std::to_string(q) + " is not a prime power");
  if (ell == 1) return make(p, 1);
  if (p == 2) throw DomainError("characteristic 2 is not supported");
  const std::uint64_t count = ipow(p, ell);
  for (std::uint64_t i = 0; i < count; ++i) {
    Poly f = monic_from_index(i, ell, p);
    if (irreducible(f, p)) return make(p, ell, f);
  }
  throw Error("internal: no irreducible polynomial found");
}

std::string Field::name() const {
  std::ostringstream os;
  os << "F_" << q();
  if (ell() > 1) {
    os << "[mod";
    for (int c : modulus()) os << ' ' << c;
    os << ']';
  }
  return os.str();
}

Scalar Field::from_int(long long v) const {
  const long long p = t_->p;
  return Scalar{static_cast<std::uint32_t>(((v % p) + p) % p)};
}

Scalar Field::from_coeffs(std::span<const int> coeffs) const {
  if (static_cast<int>(coeffs.size()) > ell()) throw DomainError("too many coefficients for field element");
  std::uint32_t c = 0;
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
    c = c * p() + static_cast<std::uint32_t>(((coeffs[i] % p()) + p()) % p());
  }
  return Scalar{c};
}

std::vector<int> Field::coeffs(Scalar a) const {
  std::vector<int> out(ell());
  std::uint32_t v = a.code;
  for (int i = 0; i < ell(); ++i) {
    out[i] = static_cast<int>(v % p());
    v /= p();
  }
  return out;
}

Scalar Field::element(std::uint32_t code) const {
  if (code >= q()) throw DomainError("element code out of range");
  return Scalar{code};
}

Scalar Field::inv(Scalar a) const {
  if (a.code == 0) throw DomainError("inverse of zero");
  return Scalar{t_->inv[a.code]};
}

Scalar Field::pow(Scalar a, std::uint64_t e) const {
  Scalar r = one();
  Scalar b = a;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

bool Field::is_square(Scalar a) const {
  if (a.code == 0) throw DomainError("is_square(0) is undefined; use quadratic_char");
  return t_->square[a.code] != 0;
}

FPoint add(const Field& F, const FPoint& a, const FPoint& b) {
  if (a.dim() != b.dim()) throw DomainError("dimension mismatch");
  FPoint r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = F.add(a[i], b[i]);
  return r;
}

FPoint sub(const Field& F, const FPoint& a, const FPoint& b) {
  if (a.dim() != b.dim()) throw DomainError("dimension mismatch");
  FPoint r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = F.sub(a[i], b[i]);
  return r;
}

FPoint scale(const Field& F, Scalar s, const FPoint& a) {
  FPoint r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = F.mul(s, a[i]);
  return r;
}

Scalar dot(const Field& F, const FPoint& a, const FPoint& b) {
  if (a.dim() != b.dim()) throw DomainError("dimension mismatch");
  Scalar acc = F.zero();
  for (std::size_t i = 0; i < a.dim(); ++i) acc = F.add(acc, F.mul(a[i], b[i]));
  return acc;
}

Scalar norm(const Field& F, const FPoint& x) { return dot(F, x, x); }

FPoint make_point(const Field& F, std::initializer_list<long long> values) {
  FPoint r;
  for (long long v : values) {
    // Nonnegative values are element codes; negatives live in the prime subfield.
    r.coords.push_back(v >= 0 ? F.element(static_cast<std::uint32_t>(v)) : F.from_int(v));
  }
  return r;
}

PointIndexer::PointIndexer(std::uint32_t q, int n) : q_(q), n_(n), size_(1) {
  if (n < 0) throw DomainError("negative dimension");
  for (int i = 0; i < n; ++i) size_ *= q;
}

std::uint64_t PointIndexer::encode(const FPoint& x) const {
  if (static_cast<int>(x.dim()) != n_) throw DomainError("dimension mismatch in encode");
  std::uint64_t idx = 0;
  for (int i = n_ - 1; i >= 0; --i) idx = idx * q_ + x[i].code;
  return idx;
}

FPoint PointIndexer::decode(std::uint64_t index) const {
  FPoint x(n_);
  decode_into(index, x.coords);
  return x;
}

void PointIndexer::decode_into(std::uint64_t index, std::span<Scalar> out) const {
  for (int i = 0; i < n_; ++i) {
    out[i] = Scalar{static_cast<std::uint32_t>(index % q_)};
    index /= q_;
  }
}

std::uint64_t checked_grid_size(std::uint32_t q, int n, std::uint64_t budget) {
  std::uint64_t size = 1;
  for (int i = 0; i < n; ++i) {
    if (size > budget / q + 1) throw BudgetExceeded("q^n exceeds the enumeration budget");
    size *= q;
  }
  if (size > budget) {
    throw BudgetExceeded("grid of " + std::to_string(size) + " points exceeds budget " + std::to_string(budget));
  }
  return size;
}

std::vector<FPoint> enumerate_points(const Field& F, int n, std::uint64_t budget) {
  const std::uint64_t size = checked_grid_size(F.q(), n, budget);
  PointIndexer ix(F.q(), n);
  std::vector<FPoint> out;
  out.reserve(size);
  for (std::uint64_t i = 0; i < size; ++i) out.push_back(ix.decode(i));
  return out;
}

namespace {

// Row-reduces in place and returns the number of pivot rows (moved first).
int row_reduce(const Field& F, std::vector<FPoint>& rows) {
  if (rows.empty()) return 0;
  const std::size_t n = rows.front().dim();
  int r = 0;
  for (std::size_t col = 0; col < n && r < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i) {
      if (rows[i][col].code != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[r], rows[pivot]);
    rows[r] = scale(F, F.inv(rows[r][col]), rows[r]);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i != r && rows[i][col].code != 0) {
        rows[i] = sub(F, rows[i], scale(F, rows[i][col], rows[r]));
      }
    }
    ++r;
  }
  return r;
}

}  // namespace

int rank(const Field& F, std::span<const FPoint> vectors) {
  std::vector<FPoint> rows(vectors.begin(), vectors.end());
  for (const auto& v : rows) {
    if (v.dim() != rows.front().dim()) throw DomainError("dimension mismatch in rank");
  }
  return row_reduce(F, rows);
}

Subspace::Subspace(Field F, int ambient_dim, std::vector<FPoint> basis)
    : F_(std::move(F)), n_(ambient_dim), basis_(std::move(basis)) {
  for (const auto& b : basis_) {
    if (static_cast<int>(b.dim()) != n_) throw DomainError("basis vector has wrong dimension");
  }
  if (rank(F_, basis_) != static_cast<int>(basis_.size())) {
    throw DomainError("subspace basis is linearly dependent");
  }
}

std::uint64_t Subspace::size() const {
  std::uint64_t s = 1;
  for (std::size_t i = 0; i < basis_.size(); ++i) s *= F_.q();
  return s;
}

bool Subspace::contains(const FPoint& x) const {
  if (static_cast<int>(x.dim()) != n_) return false;
  std::vector<FPoint> rows = basis_;
  rows.push_back(x);
  return rank(F_, rows) == dimension();
}

std::vector<FPoint> Subspace::elements(std::uint64_t budget) const {
  const std::uint64_t count = checked_grid_size(F_.q(), dimension(), budget);
  PointIndexer coeff(F_.q(), dimension());
  std::vector<FPoint> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const FPoint c = coeff.decode(i);
    FPoint v(n_);
    for (int k = 0; k < dimension(); ++k) {
      if (c[k].code != 0) v = add(F_, v, scale(F_, c[k], basis_[k]));
    }
    out.push_back(std::move(v));
  }
  return out;
}

Subspace span(const Field& F, std::span<const FPoint> vectors) {
  if (vectors.empty()) throw DomainError("span of an empty list");
  const std::size_t n = vectors.front().dim();
  std::vector<FPoint> rows(vectors.begin(), vectors.end());
  for (const auto& v : rows) {
    if (v.dim() != n) throw DomainError("dimension mismatch in span");
  }
  const int r = row_reduce(F, rows);
  rows.resize(r);
  return Subspace(F, static_cast<int>(n), std::move(rows));
}

}  // namespace conelab
