#include "rotk/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

#include "rotk/checked.hpp"

namespace rotk {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = checked_neg(num);
    den = checked_neg(den);
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::operator-() const { return Rational(checked_neg(num_), den_); }

Rational Rational::operator+(const Rational& o) const {
  const std::int64_t g = std::gcd(den_, o.den_);
  const std::int64_t lhs = checked_mul(num_, o.den_ / g);
  const std::int64_t rhs = checked_mul(o.num_, den_ / g);
  return Rational(checked_add(lhs, rhs), checked_mul(den_, o.den_ / g));
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::mod1() const { return Rational(floor_mod(num_, den_), den_); }

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || first == s.data() + s.size())
    throw std::invalid_argument("cannot parse rational '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const auto first = text.find_first_not_of(" \t");
  text = first == std::string_view::npos ? std::string_view{} : text.substr(first, text.find_last_not_of(" \t") - first + 1);
  if (text.empty()) throw std::invalid_argument("empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 15) throw std::invalid_argument("cannot parse rational '" + std::string(text) + "'");
    const bool negative = !int_part.empty() && int_part.front() == '-';
    std::int64_t whole = 0;
    if (!int_part.empty() && int_part != "-" && int_part != "+") whole = parse_int(int_part, text);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale = checked_mul(scale, 10);
    const std::int64_t f = parse_int(frac, text);
    if (f < 0 || frac.front() == '+' || frac.front() == '-') throw std::invalid_argument("cannot parse rational '" + std::string(text) + "'");
    std::int64_t num = checked_add(checked_mul(whole < 0 ? -whole : whole, scale), f);
    return Rational(negative ? -num : num, scale);
  }
  return Rational(parse_int(text, text));
}

bool congruent_up_to_sign(const Rational& a, const Rational& b) {
  return (a - b).is_integer() || (a + b).is_integer();
}

}  // namespace rotk
