#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace conelab {

// Exact exponent such as 10/3 or infinity. Always normalized with den > 0.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  static Rational infinity();
  // Accepts "a/b", "a", or "inf".
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_infinite() const { return infinite_; }
  double to_double() const;
  // Hoelder conjugate r / (r - 1); 1 <-> infinity.
  Rational conjugate() const;
  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 1;
  std::int64_t den_ = 1;
  bool infinite_ = false;
};

}  // namespace conelab
