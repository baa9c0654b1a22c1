#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace rotk {

/// Exact rational number in lowest terms with a positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;

  /// Representative of the class mod Z in [0, 1).
  Rational mod1() const;
  bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  /// Accepts "p/q", an integer, or a finite decimal such as "0.25" (converted exactly).
  static Rational parse(std::string_view text);

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// True iff a == b or a == -b modulo Z.
bool congruent_up_to_sign(const Rational& a, const Rational& b);

}  // namespace rotk
