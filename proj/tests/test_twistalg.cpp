#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "rotk/twistalg.hpp"

using rotk::AlgContext;
using rotk::AlgElement;
using rotk::Angle;
using rotk::Complex;
using rotk::GroupElt;
using rotk::IntMatrix2;
using rotk::Rational;
using rotk::Vec2;

namespace {

constexpr double kTol = 1e-12;

Complex e_pi_i(double x) { return std::polar(1.0, std::numbers::pi * x); }

}  // namespace

TEST_CASE("products of generators") {
  const double th = 2.0 / 7.0;
  const AlgContext ctx = AlgContext::lattice(Angle(Rational(2, 7)));
  const AlgElement u1 = AlgElement::delta(ctx, Vec2{1, 0});
  const AlgElement u2 = AlgElement::delta(ctx, Vec2{0, 1});
  const AlgElement u1u2 = rotk::convolve(u1, u2);
  const AlgElement u2u1 = rotk::convolve(u2, u1);
  CHECK(u1u2.support_size() == 1);
  CHECK(std::abs(u1u2.coefficient(Vec2{1, 1}) - e_pi_i(-th)) < kTol);
  CHECK(std::abs(u2u1.coefficient(Vec2{1, 1}) - e_pi_i(th)) < kTol);
  CHECK(u2u1.approx_equal(u1u2 * e_pi_i(2.0 * th)));

  const AlgElement one = AlgElement::unit(ctx);
  std::mt19937_64 rng(1);
  const AlgElement f = rotk::random_element(ctx, rng, 7, 5);
  CHECK(rotk::convolve(one, f).approx_equal(f));
  CHECK(rotk::convolve(f, one).approx_equal(f));
}

TEST_CASE("involution examples") {
  const AlgContext ctx = AlgContext::lattice(Angle(Rational(1, 3)));
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const AlgElement d = AlgElement::delta(ctx, rotk::random_vec2(rng, 9));
    CHECK(rotk::convolve(rotk::involution(d), d).approx_equal(AlgElement::unit(ctx)));
  }
  CHECK(rotk::involution(AlgElement::unit(ctx)).approx_equal(AlgElement::unit(ctx)));
  const Complex c(0.3, -1.2);
  const AlgElement d = AlgElement::delta(ctx, Vec2{2, -1});
  CHECK(rotk::involution(d * c).approx_equal(rotk::involution(d) * std::conj(c)));
  // delta_x* is supported at -x.
  CHECK(rotk::involution(d).support_size() == 1);
  CHECK(std::abs(rotk::involution(d).coefficient(Vec2{-2, 1})) > 0.5);
}

TEST_CASE("canonical trace examples") {
  const AlgContext ctx = AlgContext::lattice(Angle(Rational(1, 3)));
  CHECK(rotk::canonical_trace(AlgElement::unit(ctx)) == Complex(1.0));
  const AlgElement u1 = AlgElement::delta(ctx, Vec2{1, 0});
  const AlgElement u2 = AlgElement::delta(ctx, Vec2{0, 1});
  for (std::int64_t m = -3; m <= 3; ++m)
    for (std::int64_t n = -3; n <= 3; ++n) {
      if (m == 0 && n == 0) continue;
      CHECK(std::abs(rotk::canonical_trace(rotk::convolve(rotk::power(u1, m), rotk::power(u2, n)))) < kTol);
    }
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const AlgElement f = rotk::random_element(ctx, rng, 9, 4);
    double s = 0.0;
    for (const auto& [g, c] : f.terms()) s += std::norm(c);
    const Complex t = rotk::canonical_trace(rotk::convolve(rotk::involution(f), f));
    CHECK(std::abs(t - s) < kTol);
    CHECK(t.real() >= 0.0);
  }
}

TEST_CASE("alpha examples") {
  const double th = 1.0 / 3.0;
  const AlgContext ctx = AlgContext::lattice(Angle(Rational(1, 3)));
  std::mt19937_64 rng(4);
  const AlgElement f = rotk::random_element(ctx, rng, 8, 5);
  CHECK(rotk::alpha(IntMatrix2::identity(), f).approx_equal(f));

  const IntMatrix2 a{2, 1, 1, 1};
  const AlgElement img = rotk::alpha(a, AlgElement::delta(ctx, Vec2{1, 0}));
  CHECK(img.approx_equal(AlgElement::delta(ctx, Vec2{2, 1})));
  const AlgElement u1 = AlgElement::delta(ctx, Vec2{1, 0});
  const AlgElement u2 = AlgElement::delta(ctx, Vec2{0, 1});
  const AlgElement u1sq_u2 = rotk::convolve(rotk::convolve(u1, u1), u2);
  CHECK(img.approx_equal(u1sq_u2 * e_pi_i(2.0 * th)));

  for (int i = 0; i < 20; ++i) {
    const AlgElement g = rotk::random_element(ctx, rng, 6, 5);
    CHECK(rotk::alpha(a, rotk::alpha(a.inverse(), g)).approx_equal(g));
  }
  CHECK_THROWS(rotk::alpha({2, 0, 0, 1}, f));
  const AlgContext cross = AlgContext::crossed(Angle(Rational(1, 3)), a);
  CHECK_THROWS(rotk::alpha(a, AlgElement::unit(cross)));
}

TEST_CASE("embedding examples") {
  const double th = 2.0 / 5.0;
  const IntMatrix2 a{3, 1, 2, 1};
  const AlgContext ctx = AlgContext::lattice(Angle(Rational(2, 5)));
  const AlgElement one = AlgElement::unit(ctx);
  CHECK(rotk::embed(a, one).approx_equal(AlgElement::unit(AlgContext::crossed(Angle(Rational(2, 5)), a))));
  const AlgElement u1 = AlgElement::delta(ctx, Vec2{1, 0});
  const AlgElement u2 = AlgElement::delta(ctx, Vec2{0, 1});
  const AlgElement lhs = rotk::convolve(rotk::embed(a, u1), rotk::embed(a, u2));
  const AlgElement rhs = rotk::embed(a, AlgElement::delta(ctx, Vec2{1, 1})) * e_pi_i(-th);
  CHECK(lhs.approx_equal(rhs));
  CHECK(std::abs(rotk::canonical_trace(rotk::embed(a, rotk::convolve(u1, u2)))) < kTol);
}

TEST_CASE("covariance examples") {
  const IntMatrix2 a{2, 1, 1, 1};
  const Angle theta(Rational(1, 3));
  const AlgContext ctx = AlgContext::lattice(theta);
  const AlgElement u = rotk::implementing_unitary(theta, a);
  const AlgElement lhs =
      rotk::convolve(rotk::convolve(u, rotk::embed(a, AlgElement::delta(ctx, Vec2{1, 0}))), rotk::involution(u));
  CHECK(lhs.approx_equal(rotk::embed(a, AlgElement::delta(ctx, Vec2{2, 1}))));
  CHECK(rotk::convolve(u, rotk::involution(u)).approx_equal(AlgElement::unit(AlgContext::crossed(theta, a))));

  std::mt19937_64 rng(5);
  std::vector<AlgElement> samples;
  for (int i = 0; i < 20; ++i) samples.push_back(rotk::random_element(ctx, rng, 6, 5));
  CHECK(rotk::covariance_check(a, theta, samples) <= 1e-12);
  CHECK(rotk::covariance_check({1, 3, 0, 1}, theta, samples) <= 1e-12);
}

TEST_CASE("associativity and trace property on both groups") {
  std::mt19937_64 rng(6);
  const Angle theta(Rational(3, 7));
  for (const AlgContext& ctx : {AlgContext::lattice(theta), AlgContext::crossed(theta, {2, 1, 1, 1}),
                                AlgContext::crossed(theta, {1, 2, 0, 1})}) {
    const std::int64_t mp = ctx.kind == rotk::GroupKind::Lattice ? 0 : 2;
    for (int i = 0; i < 30; ++i) {
      const AlgElement f = rotk::random_element(ctx, rng, 5, 4, mp);
      const AlgElement g = rotk::random_element(ctx, rng, 5, 4, mp);
      const AlgElement h = rotk::random_element(ctx, rng, 5, 4, mp);
      CHECK(rotk::convolve(rotk::convolve(f, g), h).max_deviation(rotk::convolve(f, rotk::convolve(g, h))) <= 1e-11);
      CHECK(std::abs(rotk::canonical_trace(rotk::convolve(f, g)) - rotk::canonical_trace(rotk::convolve(g, f))) <= 1e-12);
      CHECK(rotk::involution(rotk::convolve(f, g)).approx_equal(rotk::convolve(rotk::involution(g), rotk::involution(f))));
    }
  }
}

TEST_CASE("associativity breaks when the cocycle is perturbed at one point") {
  const Angle theta(Rational(1, 3));
  const AlgContext ctx = AlgContext::lattice(theta);
  const auto w = rotk::omega_tilde_cocycle(theta, IntMatrix2::identity());
  const GroupElt p{{1, 0}, 0}, q{{0, 1}, 0};
  const rotk::Cocycle<GroupElt> bent = [w, p, q](const GroupElt& s, const GroupElt& t) {
    const Complex v = w(s, t);
    return (s == p && t == q) ? v * std::polar(1.0, 0.3) : v;
  };
  const AlgElement f = AlgElement::delta(ctx, Vec2{1, 0});
  const AlgElement g = AlgElement::delta(ctx, Vec2{0, 1});
  const AlgElement h = AlgElement::delta(ctx, Vec2{0, 1});
  const AlgElement good_l = rotk::convolve_with(rotk::convolve_with(f, g, w), h, w);
  const AlgElement good_r = rotk::convolve_with(f, rotk::convolve_with(g, h, w), w);
  CHECK(good_l.max_deviation(good_r) <= 1e-12);
  const AlgElement bad_l = rotk::convolve_with(rotk::convolve_with(f, g, bent), h, bent);
  const AlgElement bad_r = rotk::convolve_with(f, rotk::convolve_with(g, h, bent), bent);
  CHECK(bad_l.max_deviation(bad_r) > 1e-3);
}

TEST_CASE("Weyl correspondence") {
  const Angle theta(Rational(2, 5));
  const AlgContext ctx = AlgContext::lattice(theta);
  const AlgElement u1 = AlgElement::delta(ctx, Vec2{1, 0});
  const AlgElement u2 = AlgElement::delta(ctx, Vec2{0, 1});
  for (std::int64_t m = -4; m <= 4; ++m)
    for (std::int64_t n = -4; n <= 4; ++n) {
      const AlgElement rhs = rotk::convolve(rotk::power(u1, m), rotk::power(u2, n)) * e_pi_i(0.4 * static_cast<double>(m * n));
      CHECK(AlgElement::delta(ctx, Vec2{m, n}).approx_equal(rhs));
    }
}

TEST_CASE("errors") {
  const AlgContext a = AlgContext::lattice(Angle(Rational(1, 3)));
  const AlgContext b = AlgContext::lattice(Angle(Rational(1, 4)));
  CHECK_THROWS_AS(rotk::convolve(AlgElement::unit(a), AlgElement::unit(b)), std::invalid_argument);
  CHECK_THROWS_AS(AlgElement::unit(a) + AlgElement::unit(b), std::invalid_argument);
  std::mt19937_64 rng(7);
  const AlgElement f = rotk::random_element(a, rng, 40, 20);
  CHECK_THROWS_AS(rotk::convolve(f, f, 100), std::length_error);
  CHECK_THROWS(AlgElement::delta(a, GroupElt{{1, 0}, 1}));
  CHECK_THROWS(AlgContext::crossed(Angle(Rational(1, 3)), {2, 0, 0, 1}));
}

TEST_CASE("json round trip") {
  std::mt19937_64 rng(8);
  for (const AlgContext& ctx : {AlgContext::lattice(Angle(Rational(1, 3))),
                                AlgContext::crossed(Angle(Rational(1, 3)), {2, 1, 1, 1})}) {
    const AlgElement f = rotk::random_element(ctx, rng, 6, 4, ctx.kind == rotk::GroupKind::Lattice ? 0 : 2);
    const auto j = rotk::to_json(f);
    CHECK(j.is_array());
    CHECK(j.size() == f.support_size());
    CHECK(j[0]["element"].size() == (ctx.kind == rotk::GroupKind::Lattice ? 2u : 3u));
    CHECK(rotk::element_from_json(j, ctx).max_deviation(f) == 0.0);
  }
}
