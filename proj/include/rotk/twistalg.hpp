#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"

#include "rotk/cocycle.hpp"

namespace rotk {

/// Per-coefficient equality tolerance for algebra elements.
inline constexpr double kCoefficientTolerance = 1e-12;
/// Coefficients below this modulus are dropped after arithmetic.
inline constexpr double kPruneThreshold = 1e-15;
inline constexpr std::size_t kDefaultSupportCap = 1'000'000;

enum class GroupKind { Lattice, Crossed };

/// Which twisted group algebra an element lives in: l1(Z^2, omega_theta) or
/// l1(Z^2 x|_A Z, omega~_theta).
struct AlgContext {
  GroupKind kind = GroupKind::Lattice;
  Angle theta;
  IntMatrix2 a = IntMatrix2::identity();  // ignored for Lattice

  static AlgContext lattice(const Angle& theta) { return {GroupKind::Lattice, theta, IntMatrix2::identity()}; }
  static AlgContext crossed(const Angle& theta, const IntMatrix2& a);

  friend bool operator==(const AlgContext& l, const AlgContext& r) {
    return l.kind == r.kind && l.theta == r.theta && (l.kind == GroupKind::Lattice || l.a == r.a);
  }
};

/// Finitely supported function on the group with complex coefficients. Lattice
/// elements are keyed by (x, 0). Values are immutable; every operation returns
/// a new element.
class AlgElement {
 public:
  using Terms = std::map<GroupElt, Complex>;

  explicit AlgElement(AlgContext ctx, Terms terms = {});

  static AlgElement zero(const AlgContext& ctx) { return AlgElement(ctx); }
  static AlgElement unit(const AlgContext& ctx);
  static AlgElement delta(const AlgContext& ctx, const GroupElt& g, Complex c = 1.0);
  static AlgElement delta(const AlgContext& ctx, const Vec2& x, Complex c = 1.0) { return delta(ctx, GroupElt{x, 0}, c); }

  const AlgContext& context() const { return ctx_; }
  const Terms& terms() const { return terms_; }
  std::size_t support_size() const { return terms_.size(); }
  Complex coefficient(const GroupElt& g) const;
  Complex coefficient(const Vec2& x) const { return coefficient(GroupElt{x, 0}); }

  AlgElement operator+(const AlgElement& o) const;
  AlgElement operator-(const AlgElement& o) const;
  AlgElement operator*(Complex s) const;

  /// Largest coefficient difference over the union of supports.
  double max_deviation(const AlgElement& o) const;
  bool approx_equal(const AlgElement& o, double tol = kCoefficientTolerance) const {
    return max_deviation(o) <= tol;
  }

 private:
  AlgContext ctx_;
  Terms terms_;
};

/// (f*g)(s) = sum_{tu = s} f(t) g(u) w(t, u) with the context's cocycle.
/// Throws std::invalid_argument on context mismatch and std::length_error when
/// the product support would exceed the cap.
AlgElement convolve(const AlgElement& f, const AlgElement& g, std::size_t support_cap = kDefaultSupportCap);

/// Convolution with an explicitly supplied cocycle on the context's group.
AlgElement convolve_with(const AlgElement& f, const AlgElement& g, const Cocycle<GroupElt>& w,
                         std::size_t support_cap = kDefaultSupportCap);

/// f^k for k >= 0; negative k uses the involution (meaningful for unitaries).
AlgElement power(const AlgElement& f, std::int64_t k);

/// f*(s) = conj(w(s, s^-1)) conj(f(s^-1)).
AlgElement involution(const AlgElement& f);

/// Normalized canonical trace: the coefficient at the identity.
Complex canonical_trace(const AlgElement& f);

/// [alpha_A f](x) = f(A^-1 x) on the lattice algebra.
AlgElement alpha(const IntMatrix2& a, const AlgElement& f);

/// Inclusion of l1(Z^2, omega_theta) into l1(Z^2 x|_A Z, omega~_theta) at n = 0.
AlgElement embed(const IntMatrix2& a, const AlgElement& f);

/// Implementing unitary u = delta_{((0,0),1)} of the crossed product.
AlgElement implementing_unitary(const Angle& theta, const IntMatrix2& a);

/// Max over samples of the coefficient deviation between u iota(f) u* and
/// iota(alpha_A(f)).
double covariance_check(const IntMatrix2& a, const Angle& theta, std::span<const AlgElement> samples);

/// Random element with `terms` coefficients of modulus <= 1 on a box of the given radius.
AlgElement random_element(const AlgContext& ctx, std::mt19937_64& rng, std::size_t terms, std::int64_t radius,
                          std::int64_t max_power = 0);

/// Serialized as a list of {"element": [x1,x2] or [x1,x2,n], "re", "im"}.
nlohmann::json to_json(const AlgElement& f);
AlgElement element_from_json(const nlohmann::json& j, const AlgContext& ctx);

}  // namespace rotk
