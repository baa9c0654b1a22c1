#include "rotk/rotrep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rotk/checked.hpp"

namespace rotk {

RationalAngle::RationalAngle(const Rational& value) : value_(value) {
  if (value.num() < 0 || value.num() >= value.den())
    throw std::invalid_argument("rational angle " + value.str() + " is not in [0, 1)");
}

RepPoint RepPoint::from_turns(double s1, double s2) {
  const double two_pi = 2.0 * std::numbers::pi;
  return {std::polar(1.0, two_pi * s1), std::polar(1.0, two_pi * s2)};
}

namespace {

Complex int_power(Complex z, std::int64_t k) {
  if (k < 0) return int_power(1.0 / z, -k);
  Complex r{1.0, 0.0};
  while (k > 0) {
    if (k & 1) r *= z;
    z *= z;
    k >>= 1;
  }
  return r;
}

double frac(double t) { return t - std::floor(t); }

}  // namespace

ClockShift clock_shift(const RationalAngle& theta) {
  const std::int64_t q = theta.q();
  ClockShift cs{CMatrix::Zero(q, q), CMatrix::Zero(q, q)};
  for (std::int64_t j = 0; j < q; ++j) {
    cs.w1((j + 1) % q, j) = 1.0;
    cs.w2(j, j) = RootOfUnity::make(checked_mul(j, theta.p()), q).value();
  }
  return cs;
}

CMatrix rep(const RationalAngle& theta, const RepPoint& z, const Vec2& x) {
  const std::int64_t q = theta.q();
  const Complex scalar =
      int_power(z.z1, x.x1) * int_power(z.z2, x.x2) * half_turn_phase(theta.angle(), checked_mul(x.x1, x.x2));
  CMatrix m = CMatrix::Zero(q, q);
  const std::int64_t shift = floor_mod(x.x1, q);
  const std::int64_t clock_step = floor_mod(checked_mul(floor_mod(x.x2, q), theta.p()), q);
  for (std::int64_t j = 0; j < q; ++j) {
    // W1^x1 W2^x2 e_j = zeta^{j x2} e_{j + x1}
    m((j + shift) % q, j) = scalar * RootOfUnity::make((j * clock_step) % q, q).value();
  }
  return m;
}

CMatrix apply_element(const RationalAngle& theta, const RepPoint& z, const AlgElement& f) {
  if (f.context().kind != GroupKind::Lattice || !(f.context().theta == theta.angle()))
    throw std::invalid_argument("apply_element: element does not live in the lattice algebra at angle " + theta.value().str());
  CMatrix out = CMatrix::Zero(theta.q(), theta.q());
  for (const auto& [g, c] : f.terms()) out += c * rep(theta, z, g.x);
  return out;
}

RieffelData::RieffelData(const RationalAngle& theta, std::optional<Rational> eps) : theta_(theta) {
  if (theta.p() == 0) throw std::invalid_argument("the projection is only constructed for theta != 0");
  const Rational one_minus = Rational(1) - theta.value();
  const Rational limit = std::min(theta.value(), one_minus);
  eps_ = eps.value_or(Rational(limit.num(), checked_mul(limit.den(), 2)));
  if (eps_ <= Rational(0) || eps_ >= limit)
    throw std::invalid_argument("eps = " + eps_.str() + " must lie in (0, " + limit.str() + ")");
  theta_d_ = theta.value().to_double();
  eps_d_ = eps_.to_double();
}

double RieffelData::bump(double t) const {
  t = frac(t);
  if (t < eps_d_) return t / eps_d_;
  if (t <= theta_d_) return 1.0;
  if (t < theta_d_ + eps_d_) return 1.0 - (t - theta_d_) / eps_d_;
  return 0.0;
}

double RieffelData::ridge(double t) const {
  t = frac(t);
  if (t < theta_d_ || t > theta_d_ + eps_d_) return 0.0;
  const double f = bump(t);
  return std::sqrt(std::max(0.0, f - f * f));
}

CMatrix rieffel_projection_matrix(const RieffelData& data, const RepPoint& z) {
  const RationalAngle& theta = data.theta();
  const std::int64_t q = theta.q();
  const ClockShift cs = clock_shift(theta);
  // Spectral angles of z2 W2: t_j = s + j p/q (mod 1).
  const double s = std::arg(z.z2) / (2.0 * std::numbers::pi);
  Eigen::VectorXcd f_diag(q), h_diag(q);
  for (std::int64_t j = 0; j < q; ++j) {
    const double t = frac(s + static_cast<double>(floor_mod(j * theta.p(), q)) / static_cast<double>(q));
    f_diag(j) = data.bump(t);
    h_diag(j) = data.ridge(t);
  }
  const CMatrix hu = h_diag.asDiagonal() * (z.z1 * cs.w1);
  CMatrix p = hu + hu.adjoint();
  p.diagonal() += f_diag;
  return p;
}

double projection_defect(const CMatrix& p) {
  const CMatrix d = p * p - p;
  return Eigen::JacobiSVD<CMatrix>(d).singularValues()(0);
}

double selfadjoint_defect(const CMatrix& p) {
  const CMatrix d = p - p.adjoint();
  return Eigen::JacobiSVD<CMatrix>(d).singularValues()(0);
}

Complex numeric_trace(const RationalAngle& theta, const AlgElement& f, std::int64_t grid) {
  std::int64_t extent = 0;
  for (const auto& [g, c] : f.terms()) extent = std::max({extent, std::abs(g.x.x1), std::abs(g.x.x2)});
  if (grid <= extent)
    throw std::invalid_argument("numeric_trace: grid " + std::to_string(grid) + " must exceed the support extent " +
                                std::to_string(extent));
  const double n = static_cast<double>(grid);
  Complex sum{};
  for (std::int64_t a = 0; a < grid; ++a) {
    for (std::int64_t b = 0; b < grid; ++b) {
      const RepPoint z = RepPoint::from_turns(static_cast<double>(a) / n, static_cast<double>(b) / n);
      sum += apply_element(theta, z, f).trace();
    }
  }
  return sum / (n * n * static_cast<double>(theta.q()));
}

namespace {

double average_trace(const RieffelData& data, std::int64_t n) {
  const double q = static_cast<double>(data.theta().q());
  double sum = 0.0;
  for (std::int64_t k = 0; k < n; ++k) {
    const RepPoint z = RepPoint::from_turns(0.0, static_cast<double>(k) / static_cast<double>(n));
    sum += rieffel_projection_matrix(data, z).trace().real() / q;
  }
  return sum / static_cast<double>(n);
}

}  // namespace

TraceEstimate rieffel_trace(const RieffelData& data, std::int64_t n) {
  if (n < 256) throw std::invalid_argument("rieffel_trace: quadrature size must be at least 256");
  const double coarse = average_trace(data, n);
  const double fine = average_trace(data, 2 * n);
  return {coarse, std::abs(coarse - fine)};
}

}  // namespace rotk
