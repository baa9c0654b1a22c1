#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rotk/intmat.hpp"
#include "rotk/rational.hpp"

namespace rotk {

using Complex = std::complex<double>;

inline constexpr double kUnitTolerance = 1e-12;
inline constexpr double kCocycleTolerance = 1e-12;

/// Rotation angle. The exact rational part is always present; an optional real
/// override replaces it when evaluating phases (e.g. for irrational samples).
/// The rational is kept as given, not reduced mod 1: e^{i pi theta k} depends on
/// theta mod 2, so theta and theta + 1 give cohomologous but different cocycles.
class Angle {
 public:
  Angle() = default;
  Angle(Rational value) : exact_(value) {}

  /// Real-valued angle; the rational part is the best approximant with
  /// denominator <= 10^6 and is what exact consumers (K-theory) see.
  static Angle from_real(double value);

  const Rational& exact() const { return exact_; }
  const std::optional<double>& real_override() const { return override_; }
  bool is_exact() const { return !override_.has_value(); }
  double value() const { return override_ ? *override_ : exact_.to_double(); }
  Angle negated() const;
  std::string str() const;

  friend bool operator==(const Angle&, const Angle&) = default;

 private:
  Rational exact_;
  std::optional<double> override_;
};

/// e^{2 pi i index / order}, kept in lowest terms with 0 <= index < order.
struct RootOfUnity {
  std::int64_t index = 0;
  std::int64_t order = 1;

  static RootOfUnity make(std::int64_t index, std::int64_t order);
  RootOfUnity operator*(const RootOfUnity& o) const;
  RootOfUnity conj() const { return make(order - index, order); }
  Complex value() const;
  friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;
};

/// e^{i pi theta k}.
Complex half_turn_phase(const Angle& theta, std::int64_t k);
/// Exact variant; nullopt when theta carries a real override.
std::optional<RootOfUnity> half_turn_phase_exact(const Angle& theta, std::int64_t k);

/// x2*y1 - x1*y2, the integer exponent of omega_theta.
std::int64_t omega_exponent(const Vec2& x, const Vec2& y);

/// omega_theta(x, y) = e^{i pi theta (x2 y1 - x1 y2)} on Z^2.
Complex omega(const Angle& theta, const Vec2& x, const Vec2& y);
std::optional<RootOfUnity> omega_exact(const Angle& theta, const Vec2& x, const Vec2& y);

/// Element (x, n) of Z^2 x|_A Z.
struct GroupElt {
  Vec2 x;
  std::int64_t n = 0;

  friend auto operator<=>(const GroupElt&, const GroupElt&) = default;
};

std::ostream& operator<<(std::ostream& os, const GroupElt& g);

/// omega~_theta((x,n),(y,m)) = omega_theta(x, A^n y). Throws if det A != 1.
Complex omega_tilde(const Angle& theta, const IntMatrix2& a, const GroupElt& g, const GroupElt& h);

/// Additive group Z^2.
struct LatticeLaw {
  Vec2 identity() const { return {}; }
  Vec2 multiply(const Vec2& x, const Vec2& y) const { return x + y; }
  Vec2 inverse(const Vec2& x) const { return -x; }
};

/// Z^2 x|_A Z with (x,n)(y,m) = (x + A^n y, n + m). Powers of A are tabulated
/// up front for |n| <= kMaxPower (or until entries leave int64), so instances
/// are immutable and may be shared between threads.
class SemidirectLaw {
 public:
  explicit SemidirectLaw(const IntMatrix2& a);

  const IntMatrix2& matrix() const { return a_; }
  /// A^n; throws std::out_of_range beyond the tabulated range.
  const IntMatrix2& power(std::int64_t n) const;
  Vec2 act(std::int64_t n, const Vec2& y) const { return power(n) * y; }

  GroupElt identity() const { return {}; }
  GroupElt multiply(const GroupElt& g, const GroupElt& h) const;
  GroupElt inverse(const GroupElt& g) const;

 private:
  IntMatrix2 a_;
  std::vector<IntMatrix2> positive_;  // A^0, A^1, ...
  std::vector<IntMatrix2> negative_;  // A^0, A^-1, ...
};

template <class G>
using Cocycle = std::function<Complex(const G&, const G&)>;

Cocycle<Vec2> omega_cocycle(const Angle& theta);
Cocycle<GroupElt> omega_tilde_cocycle(const Angle& theta, const IntMatrix2& a);

struct DeviationReport {
  double max_deviation = 0.0;
  std::size_t checks = 0;
  double tolerance = kCocycleTolerance;

  bool passed() const { return max_deviation <= tolerance; }
  void record(double dev) {
    max_deviation = std::max(max_deviation, dev);
    ++checks;
  }
};

/// Checks w(g,h) w(gh,k) = w(g,hk) w(h,k) on every triple and w(g,e) = w(e,g) = 1
/// on every element that occurs.
template <class G, class Law>
DeviationReport verify_cocycle_identity(const Cocycle<G>& w, const Law& law,
                                        std::span<const std::array<G, 3>> triples,
                                        double tolerance = kCocycleTolerance) {
  DeviationReport rep;
  rep.tolerance = tolerance;
  const G e = law.identity();
  for (const auto& [g, h, k] : triples) {
    const Complex lhs = w(g, h) * w(law.multiply(g, h), k);
    const Complex rhs = w(g, law.multiply(h, k)) * w(h, k);
    rep.record(std::abs(lhs - rhs));
    for (const G& s : {g, h, k}) {
      rep.record(std::abs(w(s, e) - 1.0));
      rep.record(std::abs(w(e, s) - 1.0));
    }
  }
  return rep;
}

/// (w o phi)(s, t) = w(phi(s), phi(t)). phi is spot-checked on the samples for
/// the homomorphism law and injectivity; a failure throws std::invalid_argument.
template <class G, class Law>
Cocycle<G> pullback(Cocycle<G> w, std::function<G(const G&)> phi, const Law& law, std::span<const G> samples) {
  std::set<G> images;
  for (const G& s : samples) {
    images.insert(phi(s));
    for (const G& t : samples) {
      if (phi(law.multiply(s, t)) != law.multiply(phi(s), phi(t)))
        throw std::invalid_argument("pullback: map is not a homomorphism on the sampled elements");
    }
  }
  if (phi(law.identity()) != law.identity()) throw std::invalid_argument("pullback: map does not fix the identity");
  if (images.size() != std::set<G>(samples.begin(), samples.end()).size())
    throw std::invalid_argument("pullback: map is not injective on the sampled elements");
  return [w = std::move(w), phi = std::move(phi)](const G& s, const G& t) { return w(phi(s), phi(t)); };
}

/// Phi_B(x, n) = (B x, -n) on Z^2 x|_A Z for a reversor B (B A = A^-1 B, det B = -1).
class ReversorAutomorphism {
 public:
  /// Validates the reversing relation and spot-checks multiplicativity on
  /// 100 random pairs drawn from the seeded generator; throws std::invalid_argument.
  ReversorAutomorphism(const IntMatrix2& a, const IntMatrix2& b, std::uint64_t seed = 0);

  GroupElt operator()(const GroupElt& g) const { return {b_ * g.x, -g.n}; }
  const IntMatrix2& matrix() const { return a_; }
  const IntMatrix2& reversor() const { return b_; }

 private:
  IntMatrix2 a_;
  IntMatrix2 b_;
};

ReversorAutomorphism reversor_automorphism(const IntMatrix2& a, const IntMatrix2& b, std::uint64_t seed = 0);

/// Max over sampled pairs of |w(s,t) - lambda(s) lambda(t) conj(lambda(st)) w'(s,t)|.
template <class G, class Law>
DeviationReport cohomologous_witness_check(const Cocycle<G>& w, const Cocycle<G>& w_prime,
                                           const std::function<Complex(const G&)>& lambda, const Law& law,
                                           std::span<const std::pair<G, G>> pairs,
                                           double tolerance = kCocycleTolerance) {
  DeviationReport rep;
  rep.tolerance = tolerance;
  for (const auto& [s, t] : pairs) {
    const Complex rhs = lambda(s) * lambda(t) * std::conj(lambda(law.multiply(s, t))) * w_prime(s, t);
    rep.record(std::abs(w(s, t) - rhs));
  }
  return rep;
}

/// Coboundary-twisted cocycle (s,t) -> lambda(s) lambda(t) conj(lambda(st)) w(s,t).
template <class G, class Law>
Cocycle<G> twist_by_coboundary(Cocycle<G> w, std::function<Complex(const G&)> lambda, Law law) {
  return [w = std::move(w), lambda = std::move(lambda), law](const G& s, const G& t) {
    return lambda(s) * lambda(t) * std::conj(lambda(law.multiply(s, t))) * w(s, t);
  };
}

// Seeded samplers shared by tests, the verification suites and the CLI.
Vec2 random_vec2(std::mt19937_64& rng, std::int64_t radius);
GroupElt random_group_elt(std::mt19937_64& rng, std::int64_t radius, std::int64_t max_power);

}  // namespace rotk
