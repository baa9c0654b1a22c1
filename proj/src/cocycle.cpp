#include "rotk/cocycle.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>
#include <sstream>

#include "rotk/checked.hpp"

namespace rotk {

Angle Angle::from_real(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("angle must be finite");
  // Continued-fraction convergents until the denominator bound is hit.
  constexpr std::int64_t kMaxDen = 1'000'000;
  std::int64_t h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  double x = value;
  for (int i = 0; i < 64; ++i) {
    const double fl = std::floor(x);
    if (std::abs(fl) > 1e12) break;
    const auto a = static_cast<std::int64_t>(fl);
    const std::int64_t h2 = a * h0 + h1;
    const std::int64_t k2 = a * k0 + k1;
    if (k2 > kMaxDen) break;
    h1 = h0; h0 = h2;
    k1 = k0; k0 = k2;
    const double frac = x - fl;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  Angle out(Rational(h0, k0));
  out.override_ = value;
  return out;
}

Angle Angle::negated() const {
  Angle out(-exact_);
  if (override_) out.override_ = -*override_;
  return out;
}

std::string Angle::str() const {
  if (!override_) return exact_.str();
  std::ostringstream os;
  os.precision(17);
  os << *override_;
  return os.str();
}

RootOfUnity RootOfUnity::make(std::int64_t index, std::int64_t order) {
  if (order <= 0) throw std::invalid_argument("root of unity order must be positive");
  index = floor_mod(index, order);
  const std::int64_t g = std::gcd(index, order);
  return {index / g, order / g};
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& o) const {
  const std::int64_t l = std::lcm(order, o.order);
  const __int128 idx = (__int128)index * (l / order) + (__int128)o.index * (l / o.order);
  return make(static_cast<std::int64_t>(idx % l), l);
}

Complex RootOfUnity::value() const {
  const double t = 2.0 * std::numbers::pi * static_cast<double>(index) / static_cast<double>(order);
  return {std::cos(t), std::sin(t)};
}

std::optional<RootOfUnity> half_turn_phase_exact(const Angle& theta, std::int64_t k) {
  if (!theta.is_exact()) return std::nullopt;
  const Rational& r = theta.exact();
  const std::int64_t period = checked_mul(2, r.den());
  const __int128 idx = ((__int128)floor_mod(k, period) * floor_mod(r.num(), period)) % period;
  return RootOfUnity::make(static_cast<std::int64_t>(idx), period);
}

Complex half_turn_phase(const Angle& theta, std::int64_t k) {
  if (auto exact = half_turn_phase_exact(theta, k)) return exact->value();
  // Reduce theta*k mod 2 in extended precision before taking the phase.
  const long double t = std::fmod(static_cast<long double>(*theta.real_override()) * static_cast<long double>(k), 2.0L);
  const double angle = std::numbers::pi * static_cast<double>(t);
  return {std::cos(angle), std::sin(angle)};
}

std::int64_t omega_exponent(const Vec2& x, const Vec2& y) {
  return checked_sub(checked_mul(x.x2, y.x1), checked_mul(x.x1, y.x2));
}

Complex omega(const Angle& theta, const Vec2& x, const Vec2& y) {
  return half_turn_phase(theta, omega_exponent(x, y));
}

std::optional<RootOfUnity> omega_exact(const Angle& theta, const Vec2& x, const Vec2& y) {
  return half_turn_phase_exact(theta, omega_exponent(x, y));
}

std::ostream& operator<<(std::ostream& os, const GroupElt& g) { return os << '(' << g.x << ',' << g.n << ')'; }

Complex omega_tilde(const Angle& theta, const IntMatrix2& a, const GroupElt& g, const GroupElt& h) {
  if (a.det() != 1) throw std::invalid_argument("omega_tilde: matrix " + a.str() + " is not in SL2(Z)");
  return omega(theta, g.x, matrix_power(a, g.n) * h.x);
}

SemidirectLaw::SemidirectLaw(const IntMatrix2& a) : a_(a) {
  if (a.det() != 1) throw std::invalid_argument("semidirect product needs A in SL2(Z), got " + a.str());
  const IntMatrix2 a_inv = a.inverse();
  positive_.push_back(IntMatrix2::identity());
  negative_.push_back(IntMatrix2::identity());
  for (std::int64_t i = 1; i <= kMaxPower; ++i) {
    try {
      positive_.push_back(positive_.back() * a);
      negative_.push_back(negative_.back() * a_inv);
    } catch (const std::overflow_error&) {
      break;
    }
  }
  negative_.resize(std::min(positive_.size(), negative_.size()));
  positive_.resize(negative_.size());
}

const IntMatrix2& SemidirectLaw::power(std::int64_t n) const {
  const std::size_t k = static_cast<std::size_t>(n < 0 ? -n : n);
  if (k >= positive_.size())
    throw std::out_of_range("power A^" + std::to_string(n) + " of " + a_.str() + " is outside the 64-bit range");
  return n < 0 ? negative_[k] : positive_[k];
}

GroupElt SemidirectLaw::multiply(const GroupElt& g, const GroupElt& h) const {
  return {g.x + act(g.n, h.x), checked_add(g.n, h.n)};
}

GroupElt SemidirectLaw::inverse(const GroupElt& g) const { return {-act(-g.n, g.x), checked_neg(g.n)}; }

Cocycle<Vec2> omega_cocycle(const Angle& theta) {
  return [theta](const Vec2& x, const Vec2& y) { return omega(theta, x, y); };
}

Cocycle<GroupElt> omega_tilde_cocycle(const Angle& theta, const IntMatrix2& a) {
  auto law = std::make_shared<const SemidirectLaw>(a);
  return [theta, law](const GroupElt& g, const GroupElt& h) { return omega(theta, g.x, law->act(g.n, h.x)); };
}

ReversorAutomorphism::ReversorAutomorphism(const IntMatrix2& a, const IntMatrix2& b, std::uint64_t seed)
    : a_(a), b_(b) {
  if (a.det() != 1) throw std::invalid_argument("reversor_automorphism: A must lie in SL2(Z)");
  if (b.det() != -1) throw std::invalid_argument("reversor_automorphism: det B must be -1, got " + std::to_string(b.det()));
  if (b * a != a.inverse() * b)
    throw std::invalid_argument("reversor_automorphism: B A != A^-1 B for A = " + a.str() + ", B = " + b.str());
  const SemidirectLaw law(a);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 100; ++i) {
    const GroupElt g = random_group_elt(rng, 20, 4);
    const GroupElt h = random_group_elt(rng, 20, 4);
    if ((*this)(law.multiply(g, h)) != law.multiply((*this)(g), (*this)(h)))
      throw std::invalid_argument("reversor_automorphism: multiplicativity spot check failed");
  }
}

ReversorAutomorphism reversor_automorphism(const IntMatrix2& a, const IntMatrix2& b, std::uint64_t seed) {
  return ReversorAutomorphism(a, b, seed);
}

Vec2 random_vec2(std::mt19937_64& rng, std::int64_t radius) {
  std::uniform_int_distribution<std::int64_t> dist(-radius, radius);
  const std::int64_t x1 = dist(rng);
  const std::int64_t x2 = dist(rng);
  return {x1, x2};
}

GroupElt random_group_elt(std::mt19937_64& rng, std::int64_t radius, std::int64_t max_power) {
  const Vec2 x = random_vec2(rng, radius);
  std::uniform_int_distribution<std::int64_t> dist(-max_power, max_power);
  return {x, dist(rng)};
}

}  // namespace rotk
