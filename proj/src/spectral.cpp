#include "conelab/spectral.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "conelab/error.hpp"
#include "conelab/parallel.hpp"

namespace conelab {

GridFn::GridFn(Field F, int n, std::uint64_t budget)
    : F_(std::move(F)), indexer_(F_.q(), n), values_(checked_grid_size(F_.q(), n, budget)) {}

GridFn::GridFn(Field F, int n, std::vector<Complex> values)
    : F_(std::move(F)), indexer_(F_.q(), n), values_(std::move(values)) {
  if (values_.size() != indexer_.size()) throw DomainError("GridFn value count must equal q^n");
}

SurfaceMeasure::SurfaceMeasure(std::vector<FPoint> support) : support_(std::move(support)) {
  if (support_.empty()) throw DomainError("surface measure needs a nonempty support");
  std::set<FPoint> seen;
  for (const auto& x : support_) {
    if (!seen.insert(x).second) throw DomainError("surface measure support has repeated points");
  }
}

namespace {

// q x q matrix of e(sign * a * b).
std::vector<Complex> phase_matrix(const Field& F, int sign) {
  CharacterTable chars(F);
  const std::uint32_t q = F.q();
  std::vector<Complex> m(static_cast<std::size_t>(q) * q);
  for (std::uint32_t a = 0; a < q; ++a) {
    for (std::uint32_t b = 0; b < q; ++b) {
      Scalar prod = F.mul(Scalar{a}, Scalar{b});
      if (sign < 0) prod = F.neg(prod);
      m[static_cast<std::size_t>(a) * q + b] = chars.e(prod);
    }
  }
  return m;
}

// One rank-1 pass per coordinate: out[.., k, ..] = sum_j M[k][j] in[.., j, ..].
void separable_transform(std::vector<Complex>& data, std::uint32_t q, int n, const std::vector<Complex>& m) {
  std::uint64_t stride = 1;
  const std::uint64_t total = data.size();
  for (int axis = 0; axis < n; ++axis) {
    const std::uint64_t block = stride * q;
    parallel_for(total / block, [&](std::size_t b) {
      std::vector<Complex> line(q);
      std::vector<Complex> out(q);
      const std::uint64_t base = b * block;
      for (std::uint64_t inner = 0; inner < stride; ++inner) {
        for (std::uint32_t j = 0; j < q; ++j) line[j] = data[base + inner + j * stride];
        for (std::uint32_t k = 0; k < q; ++k) {
          Complex acc{0.0, 0.0};
          const Complex* row = &m[static_cast<std::size_t>(k) * q];
          for (std::uint32_t j = 0; j < q; ++j) acc += row[j] * line[j];
          out[k] = acc;
        }
        for (std::uint32_t k = 0; k < q; ++k) data[base + inner + k * stride] = out[k];
      }
    });
    stride = block;
  }
}

GridFn naive_transform(const GridFn& g, int sign, double scale, std::uint64_t budget) {
  const Field& F = g.field();
  const int n = g.dim();
  const std::uint64_t size = g.size();
  if (size > budget / size + 1 || size * size > budget) {
    throw BudgetExceeded("naive transform needs q^{2n} within budget");
  }
  CharacterTable chars(F);
  const PointIndexer& ix = g.indexer();
  GridFn out(F, n);
  std::vector<FPoint> pts;
  pts.reserve(size);
  for (std::uint64_t i = 0; i < size; ++i) pts.push_back(ix.decode(i));
  for (std::uint64_t xi = 0; xi < size; ++xi) {
    Complex acc{0.0, 0.0};
    for (std::uint64_t x = 0; x < size; ++x) {
      Scalar d = dot(F, pts[xi], pts[x]);
      if (sign < 0) d = F.neg(d);
      acc += chars.e(d) * g[x];
    }
    out[xi] = acc * scale;
  }
  return out;
}

}  // namespace

GridFn fourier(const GridFn& g) {
  std::vector<Complex> data(g.values().begin(), g.values().end());
  separable_transform(data, g.field().q(), g.dim(), phase_matrix(g.field(), -1));
  return GridFn(g.field(), g.dim(), std::move(data));
}

GridFn inverse_fourier(const GridFn& f) {
  std::vector<Complex> data(f.values().begin(), f.values().end());
  separable_transform(data, f.field().q(), f.dim(), phase_matrix(f.field(), +1));
  const double scale = 1.0 / static_cast<double>(f.size());
  for (auto& v : data) v *= scale;
  return GridFn(f.field(), f.dim(), std::move(data));
}

GridFn fourier_naive(const GridFn& g, std::uint64_t budget) { return naive_transform(g, -1, 1.0, budget); }

GridFn inverse_fourier_naive(const GridFn& f, std::uint64_t budget) {
  return naive_transform(f, +1, 1.0 / static_cast<double>(f.size()), budget);
}

namespace {

int support_dim(const SurfaceMeasure& sigma) { return static_cast<int>(sigma.support().front().dim()); }

void check_extension_args(const SurfaceMeasure& sigma, std::span<const Complex> f) {
  if (f.size() != sigma.size()) throw DomainError("extension: f must have one value per support point");
}

}  // namespace

GridFn extension(const Field& F, const SurfaceMeasure& sigma, std::span<const Complex> f, std::uint64_t budget) {
  check_extension_args(sigma, f);
  const int n = support_dim(sigma);
  GridFn embedded(F, n, budget);
  for (std::size_t i = 0; i < sigma.size(); ++i) embedded.at(sigma.support()[i]) = f[i];
  GridFn out = inverse_fourier(embedded);
  const double scale = static_cast<double>(out.size()) / static_cast<double>(sigma.size());
  for (auto& v : out.values()) v *= scale;
  return out;
}

GridFn extension_direct(const Field& F, const SurfaceMeasure& sigma, std::span<const Complex> f,
                        std::uint64_t budget) {
  check_extension_args(sigma, f);
  const int n = support_dim(sigma);
  GridFn out(F, n, budget);
  CharacterTable chars(F);
  const double mass = sigma.mass();
  parallel_for(out.size(), [&](std::size_t i) {
    const FPoint x = out.indexer().decode(i);
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < sigma.size(); ++k) acc += f[k] * chars.e(dot(F, x, sigma.support()[k]));
    out[i] = acc * mass;
  });
  return out;
}

double lr_counting_norm(std::span<const Complex> u, const Rational& r) {
  if (!r.is_infinite() && r < Rational(1)) throw DomainError("L^r norm needs r >= 1");
  if (r.is_infinite()) {
    double m = 0.0;
    for (const auto& v : u) m = std::max(m, std::abs(v));
    return m;
  }
  const double e = r.to_double();
  double acc = 0.0;
  for (const auto& v : u) acc += std::pow(std::abs(v), e);
  return std::pow(acc, 1.0 / e);
}

double lp_surface_norm(std::span<const Complex> f, const Rational& p) {
  if (!p.is_infinite() && p < Rational(1)) throw DomainError("L^p norm needs p >= 1");
  if (f.empty()) throw DomainError("L^p surface norm of an empty support");
  if (p.is_infinite()) return lr_counting_norm(f, p);
  const double e = p.to_double();
  double acc = 0.0;
  for (const auto& v : f) acc += std::pow(std::abs(v), e);
  return std::pow(acc / static_cast<double>(f.size()), 1.0 / e);
}

void write_csv(const GridFn& g, std::ostream& out) {
  out << "index,re,im\n";
  out.precision(17);
  for (std::uint64_t i = 0; i < g.size(); ++i) out << i << ',' << g[i].real() << ',' << g[i].imag() << '\n';
}

GridFn read_csv(const Field& F, int n, std::istream& in) {
  GridFn g(F, n);
  std::string line;
  if (!std::getline(in, line) || line.rfind("index,re,im", 0) != 0) throw ConfigError("GridFn CSV: missing header");
  std::uint64_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::uint64_t idx = 0;
    double re = 0.0, im = 0.0;
    char c1 = 0, c2 = 0;
    if (!(ls >> idx >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',' || idx >= g.size()) {
      throw ConfigError("GridFn CSV: malformed row '" + line + "'");
    }
    g[idx] = {re, im};
    ++rows;
  }
  if (rows != g.size()) throw ConfigError("GridFn CSV: expected q^n rows");
  return g;
}

namespace {

constexpr char kMagic[4] = {'C', 'L', 'G', 'F'};

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& in) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw ConfigError("GridFn binary: truncated input");
  return v;
}

}  // namespace

void write_binary(const GridFn& g, std::ostream& out) {
  out.write(kMagic, 4);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.field().p()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.field().ell()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.dim()));
  put<std::uint64_t>(out, g.size());
  for (const auto& v : g.values()) {
    put<double>(out, v.real());
    put<double>(out, v.imag());
  }
}

GridFn read_binary(const Field& F, std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) throw ConfigError("GridFn binary: bad magic");
  const auto p = get<std::uint32_t>(in);
  const auto ell = get<std::uint32_t>(in);
  const auto n = get<std::uint32_t>(in);
  const auto count = get<std::uint64_t>(in);
  if (static_cast<int>(p) != F.p() || static_cast<int>(ell) != F.ell()) {
    throw ConfigError("GridFn binary: field mismatch");
  }
  GridFn g(F, static_cast<int>(n));
  if (count != g.size()) throw ConfigError("GridFn binary: size mismatch");
  for (std::uint64_t i = 0; i < count; ++i) {
    const double re = get<double>(in);
    const double im = get<double>(in);
    g[i] = {re, im};
  }
  return g;
}

}  // namespace conelab
