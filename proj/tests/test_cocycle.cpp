#include "doctest.h"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "rotk/cocycle.hpp"

using rotk::Angle;
using rotk::Complex;
using rotk::GroupElt;
using rotk::IntMatrix2;
using rotk::Rational;
using rotk::Vec2;

namespace {

constexpr double kTol = 1e-12;

// Direct evaluation of exp(i pi theta (x2 y1 - x1 y2)), independent of the library phase code.
Complex omega_direct(double theta, const Vec2& x, const Vec2& y) {
  const double k = static_cast<double>(x.x2 * y.x1 - x.x1 * y.x2);
  return std::polar(1.0, std::numbers::pi * theta * k);
}

std::vector<std::array<Vec2, 3>> vec_triples(std::mt19937_64& rng, int n, std::int64_t r) {
  std::vector<std::array<Vec2, 3>> out;
  for (int i = 0; i < n; ++i) out.push_back({rotk::random_vec2(rng, r), rotk::random_vec2(rng, r), rotk::random_vec2(rng, r)});
  return out;
}

}  // namespace

TEST_CASE("omega examples") {
  const Angle half(Rational(1, 2));
  CHECK(std::abs(rotk::omega(half, {1, 0}, {0, 1}) - Complex(0, -1)) < kTol);
  CHECK(rotk::omega_exponent({1, 0}, {0, 1}) == -1);
  const Angle third(Rational(1, 3));
  CHECK(std::abs(rotk::omega(third, {2, 1}, {1, 2}) - Complex(-1, 0)) < kTol);
  CHECK(rotk::omega_exponent({2, 1}, {1, 2}) == -3);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const Vec2 x = rotk::random_vec2(rng, 100);
    CHECK(std::abs(rotk::omega(Angle(Rational(3, 7)), x, x) - 1.0) < kTol);
  }
}

TEST_CASE("omega agrees with direct evaluation and the exact phase") {
  std::mt19937_64 rng(2);
  for (const Rational t : {Rational(1, 3), Rational(2, 5), Rational(-3, 7), Rational(5, 4)}) {
    const Angle theta(t);
    for (int i = 0; i < 100; ++i) {
      const Vec2 x = rotk::random_vec2(rng, 40), y = rotk::random_vec2(rng, 40);
      const Complex w = rotk::omega(theta, x, y);
      CHECK(std::abs(w - omega_direct(t.to_double(), x, y)) < 1e-11);
      const auto exact = rotk::omega_exact(theta, x, y);
      REQUIRE(exact.has_value());
      CHECK(std::abs(exact->value() - w) < kTol);
    }
  }
}

TEST_CASE("theta and theta + 1 give different cocycles") {
  const Angle a(Rational(1, 3)), b(Rational(4, 3));
  CHECK(std::abs(rotk::omega(a, {1, 0}, {0, 1}) - rotk::omega(b, {1, 0}, {0, 1})) > 0.5);
  // but theta + 2 coincides pointwise.
  const Angle c(Rational(7, 3));
  CHECK(std::abs(rotk::omega(a, {1, 0}, {0, 1}) - rotk::omega(c, {1, 0}, {0, 1})) < kTol);
}

TEST_CASE("real-valued angles") {
  const Angle t = Angle::from_real(std::numbers::sqrt2 - 1.0);
  CHECK_FALSE(t.is_exact());
  CHECK(std::abs(t.value() - (std::numbers::sqrt2 - 1.0)) < 1e-15);
  CHECK(std::abs(t.exact().to_double() - t.value()) < 1e-10);
  CHECK_FALSE(rotk::omega_exact(t, {1, 0}, {0, 1}).has_value());
  CHECK(std::abs(rotk::omega(t, {3, 1}, {-2, 5}) - omega_direct(t.value(), {3, 1}, {-2, 5})) < 1e-12);
}

TEST_CASE("root of unity arithmetic") {
  const auto z = rotk::RootOfUnity::make(2, 6);
  CHECK(z.index == 1);
  CHECK(z.order == 3);
  CHECK(z * z.conj() == rotk::RootOfUnity::make(0, 1));
  CHECK(rotk::RootOfUnity::make(-1, 4) == rotk::RootOfUnity::make(3, 4));
  CHECK(std::abs(z.value() - std::polar(1.0, 2.0 * std::numbers::pi / 3.0)) < kTol);
}

TEST_CASE("omega tilde examples") {
  const Angle half(Rational(1, 2));
  const IntMatrix2 a{1, 1, 0, 1};
  CHECK(std::abs(rotk::omega_tilde(half, a, {{0, 0}, 3}, {{5, -2}, 1}) - 1.0) < kTol);
  CHECK(std::abs(rotk::omega_tilde(half, a, {{1, 0}, 1}, {{0, 1}, 0}) - Complex(0, -1)) < kTol);
  std::mt19937_64 rng(3);
  const IntMatrix2 cat{2, 1, 1, 1};
  for (int i = 0; i < 50; ++i) {
    const Vec2 x = rotk::random_vec2(rng, 20), y = rotk::random_vec2(rng, 20);
    CHECK(std::abs(rotk::omega_tilde(half, cat, {x, 0}, {y, 2}) - rotk::omega(half, x, y)) < kTol);
  }
  CHECK_THROWS(rotk::omega_tilde(half, {2, 0, 0, 1}, {{1, 0}, 1}, {{0, 1}, 0}));
}

TEST_CASE("semidirect law") {
  const rotk::SemidirectLaw law({2, 1, 1, 1});
  const GroupElt g{{1, 2}, 1}, h{{-3, 1}, -2};
  CHECK(law.multiply(g, h) == GroupElt{Vec2{1, 2} + IntMatrix2{2, 1, 1, 1} * Vec2{-3, 1}, -1});
  CHECK(law.multiply(g, law.inverse(g)) == law.identity());
  CHECK(law.multiply(law.inverse(h), h) == law.identity());
  CHECK(law.power(-1) == IntMatrix2{1, -1, -1, 2});
}

TEST_CASE("cocycle identity examples") {
  std::mt19937_64 rng(4);
  const auto triples = vec_triples(rng, 50, 20);
  const auto rep = rotk::verify_cocycle_identity<Vec2>(rotk::omega_cocycle(Angle(Rational(1, 3))), rotk::LatticeLaw{},
                                                       std::span<const std::array<Vec2, 3>>(triples));
  CHECK(rep.passed());
  CHECK(rep.max_deviation <= 1e-12);

  const rotk::SemidirectLaw law({2, 1, 1, 1});
  std::vector<std::array<GroupElt, 3>> gt;
  for (int i = 0; i < 50; ++i)
    gt.push_back({rotk::random_group_elt(rng, 20, 4), rotk::random_group_elt(rng, 20, 4), rotk::random_group_elt(rng, 20, 4)});
  const auto rep2 = rotk::verify_cocycle_identity<GroupElt>(
      rotk::omega_tilde_cocycle(Angle(Rational(1, 3)), {2, 1, 1, 1}), law, std::span<const std::array<GroupElt, 3>>(gt));
  CHECK(rep2.max_deviation <= 1e-12);

  const rotk::Cocycle<Vec2> trivial = [](const Vec2&, const Vec2&) { return Complex(1.0); };
  CHECK(rotk::verify_cocycle_identity<Vec2>(trivial, rotk::LatticeLaw{}, std::span<const std::array<Vec2, 3>>(triples))
            .max_deviation == 0.0);
}

TEST_CASE("cocycle identity across angles and matrices") {
  std::mt19937_64 rng(5);
  const std::vector<Angle> angles = {Angle(Rational(0)), Angle(Rational(1, 4)), Angle(Rational(1, 3)),
                                     Angle(Rational(1, 2)), Angle::from_real(std::numbers::sqrt2 - 1.0)};
  const std::vector<IntMatrix2> mats = {{2, 1, 1, 1}, {3, 1, 2, 1}, {1, 3, 0, 1}, {-3, 1, -1, 0}, {0, -1, 1, 0}};
  for (const Angle& t : angles) {
    const auto triples = vec_triples(rng, 100, 50);
    CHECK(rotk::verify_cocycle_identity<Vec2>(rotk::omega_cocycle(t), rotk::LatticeLaw{},
                                              std::span<const std::array<Vec2, 3>>(triples))
              .passed());
    for (const auto& a : mats) {
      const rotk::SemidirectLaw law(a);
      std::vector<std::array<GroupElt, 3>> gt;
      for (int i = 0; i < 100; ++i)
        gt.push_back({rotk::random_group_elt(rng, 10, 3), rotk::random_group_elt(rng, 10, 3),
                      rotk::random_group_elt(rng, 10, 3)});
      CHECK(rotk::verify_cocycle_identity<GroupElt>(rotk::omega_tilde_cocycle(t, a), law,
                                                    std::span<const std::array<GroupElt, 3>>(gt))
                .passed());
    }
  }
}

TEST_CASE("a broken cocycle fails the identity") {
  const rotk::Cocycle<Vec2> bad = [](const Vec2& x, const Vec2& y) {
    return std::polar(1.0, 0.1 * static_cast<double>(x.x1 * y.x1 * y.x1));
  };
  std::mt19937_64 rng(6);
  const auto triples = vec_triples(rng, 20, 5);
  CHECK_FALSE(rotk::verify_cocycle_identity<Vec2>(bad, rotk::LatticeLaw{}, std::span<const std::array<Vec2, 3>>(triples))
                  .passed());
}

TEST_CASE("pullback examples") {
  std::mt19937_64 rng(7);
  std::vector<Vec2> samples;
  for (int i = 0; i < 15; ++i) samples.push_back(rotk::random_vec2(rng, 10));
  const Angle theta(Rational(2, 7));
  const auto w = rotk::omega_cocycle(theta);

  const auto same = rotk::pullback<Vec2>(w, [](const Vec2& x) { return x; }, rotk::LatticeLaw{}, samples);
  const IntMatrix2 a{3, 1, 2, 1};
  const auto by_a = rotk::pullback<Vec2>(w, [a](const Vec2& x) { return a * x; }, rotk::LatticeLaw{}, samples);
  const IntMatrix2 b{1, -1, 0, -1};
  const auto by_b = rotk::pullback<Vec2>(w, [b](const Vec2& x) { return b * x; }, rotk::LatticeLaw{}, samples);
  const auto w_neg = rotk::omega_cocycle(theta.negated());
  for (int i = 0; i < 100; ++i) {
    const Vec2 x = rotk::random_vec2(rng, 30), y = rotk::random_vec2(rng, 30);
    CHECK(std::abs(same(x, y) - w(x, y)) < kTol);
    CHECK(std::abs(by_a(x, y) - w(x, y)) < kTol);
    CHECK(std::abs(by_b(x, y) - w_neg(x, y)) < kTol);
  }
  // Not a homomorphism.
  CHECK_THROWS_AS(rotk::pullback<Vec2>(w, [](const Vec2& x) { return Vec2{x.x1 * x.x1, x.x2}; }, rotk::LatticeLaw{},
                                       samples),
                  std::invalid_argument);
  // Not injective.
  CHECK_THROWS_AS(rotk::pullback<Vec2>(w, [](const Vec2& x) { return Vec2{x.x1, 0}; }, rotk::LatticeLaw{}, samples),
                  std::invalid_argument);
}

TEST_CASE("reversor automorphism examples") {
  const IntMatrix2 a{2, 1, 1, 1}, b{1, -1, 0, -1};
  const auto phi = rotk::reversor_automorphism(a, b);
  CHECK(phi({{3, -4}, 0}) == GroupElt{b * Vec2{3, -4}, 0});
  CHECK(phi({{1, 0}, 1}) == GroupElt{{1, 0}, -1});
  CHECK(b * b == IntMatrix2::identity());
  std::mt19937_64 rng(8);
  const rotk::SemidirectLaw law(a);
  for (int i = 0; i < 50; ++i) {
    const GroupElt g = rotk::random_group_elt(rng, 20, 4), h = rotk::random_group_elt(rng, 20, 4);
    CHECK(phi(phi(g)) == g);
    CHECK(phi(law.multiply(g, h)) == law.multiply(phi(g), phi(h)));
  }
  CHECK_THROWS_AS(rotk::reversor_automorphism(a, {1, 0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(rotk::reversor_automorphism(a, {1, 0, 0, -1}), std::invalid_argument);
}

TEST_CASE("cohomologous witness examples") {
  std::mt19937_64 rng(9);
  const Angle theta(Rational(1, 3));
  const auto w = rotk::omega_cocycle(theta);
  std::vector<std::pair<Vec2, Vec2>> pairs;
  for (int i = 0; i < 200; ++i) pairs.emplace_back(rotk::random_vec2(rng, 25), rotk::random_vec2(rng, 25));
  const std::function<Complex(const Vec2&)> one = [](const Vec2&) { return Complex(1.0); };
  CHECK(rotk::cohomologous_witness_check<Vec2>(w, w, one, rotk::LatticeLaw{}, std::span<const std::pair<Vec2, Vec2>>(pairs))
            .max_deviation == 0.0);

  const std::function<Complex(const Vec2&)> lambda = [](const Vec2& x) {
    return std::polar(1.0, 0.37 * static_cast<double>(x.x1 * x.x1) - 1.3 * static_cast<double>(x.x2));
  };
  const auto twisted = rotk::twist_by_coboundary<Vec2>(w, lambda, rotk::LatticeLaw{});
  const auto rep = rotk::cohomologous_witness_check<Vec2>(twisted, w, lambda, rotk::LatticeLaw{},
                                                          std::span<const std::pair<Vec2, Vec2>>(pairs));
  CHECK(rep.max_deviation <= 1e-12);
  // A wrong witness is detected.
  const auto wrong = rotk::cohomologous_witness_check<Vec2>(twisted, w, one, rotk::LatticeLaw{},
                                                            std::span<const std::pair<Vec2, Vec2>>(pairs));
  CHECK_FALSE(wrong.passed());
}

TEST_CASE("omega tilde at theta equals omega tilde at -theta pulled back by a reversor") {
  const IntMatrix2 a{2, 1, 1, 1}, b{1, -1, 0, -1};
  const Angle theta(Rational(1, 3));
  const auto phi = rotk::reversor_automorphism(a, b);
  const auto w = rotk::omega_tilde_cocycle(theta, a);
  const auto w_neg = rotk::omega_tilde_cocycle(theta.negated(), a);
  std::mt19937_64 rng(10);
  std::vector<GroupElt> samples;
  for (int i = 0; i < 12; ++i) samples.push_back(rotk::random_group_elt(rng, 6, 2));
  const rotk::SemidirectLaw law(a);
  const auto pulled = rotk::pullback<GroupElt>(w_neg, [phi](const GroupElt& g) { return phi(g); }, law, samples);
  std::vector<std::pair<GroupElt, GroupElt>> pairs;
  for (int i = 0; i < 200; ++i) pairs.emplace_back(rotk::random_group_elt(rng, 20, 4), rotk::random_group_elt(rng, 20, 4));
  const std::function<Complex(const GroupElt&)> one = [](const GroupElt&) { return Complex(1.0); };
  const auto rep = rotk::cohomologous_witness_check<GroupElt>(w, pulled, one, law,
                                                              std::span<const std::pair<GroupElt, GroupElt>>(pairs));
  CHECK(rep.max_deviation <= 1e-12);
}
