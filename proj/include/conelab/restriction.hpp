#pragma once

// Empirical restriction/extension experiments for the cone:
//
//   extension ratio   ||(f dsigma)^v||_{L^r(dx)} / ||f||_{L^p(dsigma)}
//   restriction ratio ||g^|_C||_{L^{p'}(dsigma)} / ||g||_{L^{r'}(dx)}
//
// Both are lower estimates for R*(p -> r); the pairing
// <(f dsigma)^v, g>_{dx} = <f, g^>_{dsigma} makes them dual to each other.
// Also here: the L^2 bound for characteristic functions with its exact
// three-term split, the dyadic level-set decomposition and the test set
// Gamma whose transform has constant modulus on most of the cone.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conelab/cone.hpp"
#include "conelab/rational.hpp"
#include "conelab/spectral.hpp"

namespace conelab {

// A function on the cone, stored by value in ConeVariety::points() order.
struct TestFunction {
  enum class Kind { characteristic_set, random_complex, delta, structured };
  Kind kind = Kind::structured;
  std::string label;
  std::vector<Complex> values;
};

TestFunction delta_function(const ConeVariety& cone, std::size_t position);
TestFunction constant_function(const ConeVariety& cone);
// Indicator of a subset of the cone; throws DomainError for points off it.
TestFunction characteristic_function(const ConeVariety& cone, const std::vector<FPoint>& set);

double extension_ratio(const ConeVariety& cone, std::span<const Complex> f, const Rational& p, const Rational& r);
inline double extension_ratio(const ConeVariety& cone, const TestFunction& f, const Rational& p, const Rational& r) {
  return extension_ratio(cone, f.values, p, r);
}
// g lives on all of F^n.
double restriction_ratio(const ConeVariety& cone, const GridFn& g, const Rational& p, const Rational& r);

// Every extension ratio is at most q^{n/r}: sup|(f dsigma)^v| <= ||f||_{L^1} <= ||f||_{L^p}.
double extension_ratio_cap(const Field& F, int n, const Rational& r);

enum class Family { singleton, random_set, random_complex, omega, gamma, constant };
std::string family_name(Family f);
Family parse_family(const std::string& name);
const std::vector<Family>& all_families();

struct SweepConfig {
  std::vector<std::uint32_t> qs;
  int n = 4;
  Rational p{2};
  Rational r{3};
  std::vector<Family> families = all_families();
  int trials = 200;
  std::uint64_t seed = 1;
  std::uint64_t budget = kDefaultBudget;
};

struct Argmax {
  Family family = Family::singleton;
  int trial = 0;
  std::size_t support = 0;  // |supp f| (or |supp g| for the dual witness)
};

struct RatioReport {
  std::uint32_t q = 0;
  int n = 0;
  Rational p, r;
  double max_ratio = 0.0;
  Argmax argmax;
  std::map<Family, double> family_max;
  std::size_t evaluated = 0;
  double cap = 0.0;
};

struct SweepReport {
  SweepConfig config;
  std::vector<RatioReport> per_q;
  double slope = 0.0;  // least squares of log max_ratio against log q
  std::map<Family, double> family_slope;
  std::string verdict;
};

SweepReport sweep_restriction(const SweepConfig& config);

// Least-squares slope of log y against log x (needs two distinct x).
double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y);
// "bounded" below 0.1, "growing" above 0.25, otherwise "inconclusive".
std::string classify_slope(double slope);
inline constexpr double kBoundedSlope = 0.1;
inline constexpr double kGrowingSlope = 0.25;

// --- L^2 bound for characteristic functions (q = 3 mod 4, n = 0 mod 4) ---

struct L2CharReport {
  std::uint64_t size = 0;       // |G|
  double m = 0.0;               // q^{-n+1} sum_{xi in C} |G^(xi)|^2 from the transform
  double m1 = 0.0, m2 = 0.0, m3 = 0.0;
  long long pairs_dual = 0;     // ordered pairs with x - y in C* (diagonal included)
  long long pairs_off = 0;      // ordered pairs with x - y off C*
  double residual = 0.0;        // |m - (m1 + m2 + m3)|
  double bound = 0.0;           // |G| + q^{-n/2} |G|^2
  std::string regime;           // small | medium | large
  double regime_bound = 0.0;    // |G|, q^{-n/2}|G|^2 or q|G|
  bool exact_ok = false;        // pairs_off - (q-1) pairs_dual <= |G|^2, in integers
  bool signs_ok = false;        // m2 <= 0 <= m3 <= q^{-n/2}|G|^2
  bool pass = false;
};

// Holds the cone and the C* membership mask for one (F, n) so that many sets
// can be evaluated cheaply. Throws DomainError unless q = 3 mod 4 and n = 0 mod 4.
class L2CharLab {
 public:
  L2CharLab(Field F, int n, std::uint64_t budget = kDefaultBudget);

  const Field& field() const { return F_; }
  int dim() const { return n_; }
  const ConeVariety& cone() const { return cone_; }
  // G by grid indices (coordinate 0 fastest); duplicates are rejected.
  L2CharReport estimate(const std::vector<std::uint64_t>& G) const;

 private:
  Field F_;
  int n_;
  ConeVariety cone_;
  std::vector<std::uint8_t> dual_;  // 1 where Gamma(z) = 0
};

L2CharReport l2_char_estimate(const Field& F, int n, const std::vector<FPoint>& G);

// --- dyadic decomposition ---

struct DyadicLevel {
  int i = 0;
  std::vector<std::uint64_t> points;  // grid indices
};

struct DyadicDecomposition {
  int cutoff = 0;                  // L
  std::vector<DyadicLevel> levels; // nonempty levels with i <= L
  std::vector<DyadicLevel> tail;   // nonempty levels with i > L
};

// ceil(n log2 q)
int default_cutoff(const Field& F, int n);
// g must be real with 0 <= g <= 1.
DyadicDecomposition dyadic_decompose(const GridFn& g, int cutoff);
// sum 2^{-i} 1_{G_i}; the tail levels are included when asked.
GridFn reconstruct(const GridFn& like, const DyadicDecomposition& dec, bool with_tail = true);
// Scales a nonnegative g so that sum g^s = 1, s = (2n+4)/(n+4).
GridFn normalize_for_dyadic(const GridFn& g);
double dyadic_exponent(int n);

struct DyadicReport {
  double s = 0.0;
  double level_sum = 0.0;          // sum_i 2^{-s i} |G_i| over i <= L
  bool level_sum_ok = false;       // level_sum <= 1
  bool level_sizes_ok = false;     // |G_i| <= 2^{s i}
  bool level_sum_relaxed_ok = false;   // level_sum <= 2^s
  bool level_sizes_relaxed_ok = false; // |G_i| <= 2^{s (i+1)}
  double u1 = 0.0, u2 = 0.0, u3 = 0.0;
  double tail_sum = 0.0;           // sum_{i > L} 2^{-i} ||1_{G_i}^||_{L^2(dsigma)}
  double tail_bound = 0.0;         // q^n 2^{-(L+1)}
  double norm_g = 0.0;             // ||g^||_{L^2(dsigma)}
  double norm_head = 0.0;          // same for sum_{i <= L} 2^{-i} 1_{G_i}
  double norm_reconstruction = 0.0;
  bool minkowski_ok = false;       // norm_head <= u1 + u2 + u3 and full reconstruction <= u + tail
};

// ||h^||_{L^2(dsigma)} = ((1/|C|) sum_{xi in C} |h^(xi)|^2)^{1/2}.
double restricted_l2_norm(const ConeVariety& cone, const GridFn& h);
DyadicReport dyadic_check(const ConeVariety& cone, const GridFn& g, const DyadicDecomposition& dec);

// --- the set Gamma ---

// {x in F^{n-1} x D : x_{n-1} = (x_1^2 + ... + x_{n-2}^2) / (4 x_n)}, D the nonzero squares.
std::vector<FPoint> gamma_testset(const Field& F, int n);

struct GammaFtReport {
  std::size_t gamma_size = 0;
  double expected = 0.0;          // q^{(n-2)/2} (q-1)/2
  std::size_t checked = 0;        // xi in C with xi_{n-1} != 0
  double max_error = 0.0;
  double value_at_zero = 0.0;     // |Gamma^(0)| = |Gamma|
  bool pass = false;
};

GammaFtReport gamma_testset_ft_check(const Field& F, int n, double tolerance = 1e-8,
                                     std::uint64_t budget = kDefaultBudget);

// --- necessary conditions ---

// Smallest r allowed at exponent p by the subspace condition for Omega and the Gamma condition.
double necessary_r_min(const Field& F, int n, const Rational& p);

struct WitnessReport {
  Rational p, r;
  std::vector<std::uint32_t> qs;
  std::vector<double> omega_ratios;  // extension ratio of 1_Omega
  std::vector<double> gamma_ratios;  // restriction ratio of 1_Gamma
  double omega_slope = 0.0;
  double gamma_slope = 0.0;
};

WitnessReport necessary_witnesses(const std::vector<std::uint32_t>& qs, int n, const Rational& p, const Rational& r,
                                  std::uint64_t budget = kDefaultBudget);

}  // namespace conelab
