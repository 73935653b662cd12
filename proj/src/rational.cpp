#include "conelab/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>

#include "conelab/error.hpp"

namespace conelab {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g == 0 ? num : num / g;
  den_ = g == 0 ? den : den / g;
}

Rational Rational::infinity() {
  Rational r;
  r.infinite_ = true;
  r.num_ = 1;
  r.den_ = 0;
  return r;
}

Rational Rational::parse(std::string_view text) {
  if (text == "inf" || text == "infinity") return infinity();
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
      throw ConfigError("invalid rational '" + std::string(text) + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ConfigError("invalid rational '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

double Rational::to_double() const {
  if (infinite_) return std::numeric_limits<double>::infinity();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

Rational Rational::conjugate() const {
  if (infinite_) return Rational(1);
  if (num_ == den_) return infinity();
  return Rational(num_, num_ - den_);
}

std::string Rational::str() const {
  if (infinite_) return "inf";
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

bool operator<(const Rational& a, const Rational& b) {
  if (a.infinite_) return false;
  if (b.infinite_) return true;
  return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

}  // namespace conelab
