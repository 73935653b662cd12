#pragma once

// Dense Fourier analysis on F^n.
//
//   fourier:          g^(xi)   = sum_x e(-xi.x) g(x)
//   inverse_fourier:  f^v(x)   = q^{-n} sum_xi e(xi.x) f(xi)
//   extension:        (f dsigma)^v(x) = N^{-1} sum_{xi in support} f(xi) e(x.xi)
//
// Transforms run as n rank-1 passes (cost n q^{n+1}); the *_naive variants
// sum all q^{2n} terms and exist as oracles for small grids.

#include <complex>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <vector>

#include "conelab/characters.hpp"
#include "conelab/field.hpp"
#include "conelab/rational.hpp"

namespace conelab {

class GridFn {
 public:
  GridFn(Field F, int n, std::uint64_t budget = kDefaultBudget);
  GridFn(Field F, int n, std::vector<Complex> values);

  const Field& field() const { return F_; }
  int dim() const { return indexer_.dim(); }
  std::uint64_t size() const { return values_.size(); }
  const PointIndexer& indexer() const { return indexer_; }

  Complex& operator[](std::uint64_t i) { return values_[i]; }
  const Complex& operator[](std::uint64_t i) const { return values_[i]; }
  Complex& at(const FPoint& x) { return values_[indexer_.encode(x)]; }
  const Complex& at(const FPoint& x) const { return values_[indexer_.encode(x)]; }

  std::span<Complex> values() { return values_; }
  std::span<const Complex> values() const { return values_; }

 private:
  Field F_;
  PointIndexer indexer_;
  std::vector<Complex> values_;
};

// Normalized counting measure on a finite support (mass 1/N per point).
class SurfaceMeasure {
 public:
  explicit SurfaceMeasure(std::vector<FPoint> support);

  std::size_t size() const { return support_.size(); }
  const std::vector<FPoint>& support() const { return support_; }
  double mass() const { return 1.0 / static_cast<double>(support_.size()); }

 private:
  std::vector<FPoint> support_;
};

GridFn fourier(const GridFn& g);
GridFn inverse_fourier(const GridFn& f);
GridFn fourier_naive(const GridFn& g, std::uint64_t budget = kDefaultBudget);
GridFn inverse_fourier_naive(const GridFn& f, std::uint64_t budget = kDefaultBudget);

// (f dsigma)^v on all of F^n through the transform of the embedded grid
// function scaled by q^n / N. `f` lists values in support order.
GridFn extension(const Field& F, const SurfaceMeasure& sigma, std::span<const Complex> f,
                 std::uint64_t budget = kDefaultBudget);
// The displayed sum evaluated point by point (cost N q^n).
GridFn extension_direct(const Field& F, const SurfaceMeasure& sigma, std::span<const Complex> f,
                        std::uint64_t budget = kDefaultBudget);

// (sum_x |u(x)|^r)^{1/r} with counting measure; max |u| for r = inf.
double lr_counting_norm(std::span<const Complex> u, const Rational& r);
// ((1/N) sum |f|^p)^{1/p} for the normalized measure on N points.
double lp_surface_norm(std::span<const Complex> f, const Rational& p);

// "index,re,im" rows with a header line.
void write_csv(const GridFn& g, std::ostream& out);
GridFn read_csv(const Field& F, int n, std::istream& in);
// Little-endian binary dump: magic, p, ell, n, count, then (re, im) pairs.
void write_binary(const GridFn& g, std::ostream& out);
GridFn read_binary(const Field& F, std::istream& in);

}  // namespace conelab
