#pragma once

#include <complex>
#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "rotk/twistalg.hpp"

namespace rotk {

using CMatrix = Eigen::MatrixXcd;

/// Rational angle p/q with 0 <= p < q, gcd(p, q) = 1.
class RationalAngle {
 public:
  RationalAngle() = default;
  /// Throws std::invalid_argument unless 0 <= value < 1.
  explicit RationalAngle(const Rational& value);
  RationalAngle(std::int64_t p, std::int64_t q) : RationalAngle(Rational(p, q)) {}

  std::int64_t p() const { return value_.num(); }
  std::int64_t q() const { return value_.den(); }
  const Rational& value() const { return value_; }
  Angle angle() const { return Angle(value_); }

 private:
  Rational value_;
};

/// Point (z1, z2) of the torus parameterizing the fiber representations.
struct RepPoint {
  Complex z1{1.0, 0.0};
  Complex z2{1.0, 0.0};

  /// z_k = e^{2 pi i s_k}.
  static RepPoint from_turns(double s1, double s2);
};

/// W1 = cyclic shift (e_j -> e_{j+1}), W2 = clock diag(zeta^j), zeta = e^{2 pi i p/q},
/// so that W2 W1 = zeta W1 W2.
struct ClockShift {
  CMatrix w1;
  CMatrix w2;
};

ClockShift clock_shift(const RationalAngle& theta);

/// pi_z(delta_x) = z1^x1 z2^x2 e^{i pi theta x1 x2} W1^x1 W2^x2.
CMatrix rep(const RationalAngle& theta, const RepPoint& z, const Vec2& x);

/// Linear extension of rep to a lattice algebra element with the same angle.
CMatrix apply_element(const RationalAngle& theta, const RepPoint& z, const AlgElement& f);

/// Ramp data for the projection h(U2) U1 + f(U2) + (h(U2) U1)*.
///
/// With t the spectral angle of U2 (U2 = e^{2 pi i t}):
///   f ramps 0 -> 1 on [0, eps], equals 1 on [eps, theta], ramps 1 -> 0 on
///   [theta, theta + eps] and vanishes on [theta + eps, 1);
///   h = sqrt(f - f^2) on [theta, theta + eps] and 0 elsewhere.
/// These satisfy h(t) h(t - theta) = 0, h(t)(f(t) + f(t - theta)) = h(t) and
/// f^2 + h^2 + h(t + theta)^2 = f (arguments mod 1), which is what makes the
/// element a projection; its trace is the integral of f, i.e. theta.
class RieffelData {
 public:
  /// Default eps = min(theta, 1 - theta) / 2. Throws std::invalid_argument for
  /// theta = 0 or eps outside (0, min(theta, 1 - theta)).
  explicit RieffelData(const RationalAngle& theta, std::optional<Rational> eps = std::nullopt);

  const RationalAngle& theta() const { return theta_; }
  const Rational& eps() const { return eps_; }

  double bump(double t) const;
  double ridge(double t) const;

 private:
  RationalAngle theta_;
  Rational eps_;
  double theta_d_;
  double eps_d_;
};

/// Image of the projection in the fiber representation at z (q x q).
CMatrix rieffel_projection_matrix(const RieffelData& data, const RepPoint& z);

/// Operator norm of P^2 - P.
double projection_defect(const CMatrix& p);
/// Operator norm of P - P*.
double selfadjoint_defect(const CMatrix& p);

/// Grid average of (1/q) tr apply_element(z) over z on the N x N grid of the
/// torus; equals f(0,0) when N exceeds every coordinate magnitude in supp f.
/// Throws std::invalid_argument if that precondition fails.
Complex numeric_trace(const RationalAngle& theta, const AlgElement& f, std::int64_t grid);

struct TraceEstimate {
  double value = 0.0;
  double error_estimate = 0.0;  // |estimate(N) - estimate(2N)|
};

/// Uniform-rule average of (1/q) tr P(z) over N points z2 on the circle (z1 = 1).
/// Throws std::invalid_argument for N < 256.
TraceEstimate rieffel_trace(const RieffelData& data, std::int64_t n);

}  // namespace rotk
