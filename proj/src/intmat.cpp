#include "rotk/intmat.hpp"

#include <charconv>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "rotk/checked.hpp"

namespace rotk {

Vec2 Vec2::operator+(const Vec2& o) const { return {checked_add(x1, o.x1), checked_add(x2, o.x2)}; }
Vec2 Vec2::operator-(const Vec2& o) const { return {checked_sub(x1, o.x1), checked_sub(x2, o.x2)}; }
Vec2 Vec2::operator-() const { return {checked_neg(x1), checked_neg(x2)}; }

IntMatrix2 IntMatrix2::operator*(const IntMatrix2& o) const {
  return {checked_dot(a, o.a, b, o.c), checked_dot(a, o.b, b, o.d),
          checked_dot(c, o.a, d, o.c), checked_dot(c, o.b, d, o.d)};
}

IntMatrix2 IntMatrix2::operator+(const IntMatrix2& o) const {
  return {checked_add(a, o.a), checked_add(b, o.b), checked_add(c, o.c), checked_add(d, o.d)};
}

IntMatrix2 IntMatrix2::operator-(const IntMatrix2& o) const {
  return {checked_sub(a, o.a), checked_sub(b, o.b), checked_sub(c, o.c), checked_sub(d, o.d)};
}

IntMatrix2 IntMatrix2::operator-() const { return {checked_neg(a), checked_neg(b), checked_neg(c), checked_neg(d)}; }

Vec2 IntMatrix2::operator*(const Vec2& v) const {
  return {checked_dot(a, v.x1, b, v.x2), checked_dot(c, v.x1, d, v.x2)};
}

std::int64_t IntMatrix2::det() const { return checked_sub(checked_mul(a, d), checked_mul(b, c)); }

std::int64_t IntMatrix2::trace() const { return checked_add(a, d); }

IntMatrix2 IntMatrix2::inverse() const {
  const std::int64_t dt = det();
  if (dt == 1) return {d, checked_neg(b), checked_neg(c), a};
  if (dt == -1) return {checked_neg(d), b, c, checked_neg(a)};
  throw std::domain_error("matrix " + str() + " is not unimodular");
}

std::string IntMatrix2::str() const {
  std::ostringstream os;
  os << a << ',' << b << ';' << c << ',' << d;
  return os.str();
}

namespace {

std::int64_t parse_entry(std::string_view field, std::string_view whole) {
  while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
  while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
  const char* first = field.data();
  if (!field.empty() && field.front() == '+') ++first;
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(first, field.data() + field.size(), v);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
    throw std::invalid_argument("matrix '" + std::string(whole) + "' has a malformed entry");
  return v;
}

}  // namespace

IntMatrix2 IntMatrix2::parse(std::string_view text) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos || text.find(';', semi + 1) != std::string_view::npos)
    throw std::invalid_argument("matrix '" + std::string(text) + "' is not of the form a,b;c,d");
  std::int64_t v[4];
  for (int r = 0; r < 2; ++r) {
    std::string_view row = r == 0 ? text.substr(0, semi) : text.substr(semi + 1);
    const auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos)
      throw std::invalid_argument("matrix '" + std::string(text) + "' is not of the form a,b;c,d");
    v[2 * r] = parse_entry(row.substr(0, comma), text);
    v[2 * r + 1] = parse_entry(row.substr(comma + 1), text);
  }
  return {v[0], v[1], v[2], v[3]};
}

std::ostream& operator<<(std::ostream& os, const IntMatrix2& m) {
  return os << "[[" << m.a << ',' << m.b << "],[" << m.c << ',' << m.d << "]]";
}

std::ostream& operator<<(std::ostream& os, const Vec2& v) { return os << '(' << v.x1 << ',' << v.x2 << ')'; }

IntMatrix2 matrix_power(const IntMatrix2& a, std::int64_t n) {
  if (n > kMaxPower || n < -kMaxPower)
    throw std::out_of_range("matrix power exponent " + std::to_string(n) + " exceeds the supported range");
  const IntMatrix2 base = n < 0 ? a.inverse() : a;
  IntMatrix2 r = IntMatrix2::identity();
  for (std::int64_t i = 0; i < (n < 0 ? -n : n); ++i) r = r * base;
  return r;
}

namespace {

struct Bezout {
  std::int64_t g, s, t;  // s*x + t*y == g >= 0
};

std::int64_t sign(std::int64_t v) { return v < 0 ? -1 : 1; }

Bezout bezout(std::int64_t x, std::int64_t y) {
  if (x != 0 && y % x == 0) return {std::abs(x), sign(x), 0};
  if (x == 0) return {std::abs(y), 0, y == 0 ? 0 : sign(y)};
  std::int64_t r0 = x, r1 = y, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, checked_sub(r0, checked_mul(q, r1)));
    std::tie(s0, s1) = std::make_pair(s1, checked_sub(s0, checked_mul(q, s1)));
    std::tie(t0, t1) = std::make_pair(t1, checked_sub(t0, checked_mul(q, t1)));
  }
  if (r0 < 0) return {-r0, -s0, -t0};
  return {r0, s0, t0};
}

bool divides(std::int64_t h, std::int64_t v) { return h == 0 ? v == 0 : v % h == 0; }

}  // namespace

SNFDecomposition smith_normal_form(const IntMatrix2& m) {
  IntMatrix2 w = m;
  IntMatrix2 u = IntMatrix2::identity();
  IntMatrix2 v = IntMatrix2::identity();
  for (;;) {
    while (w.b != 0 || w.c != 0) {
      if (w.b != 0) {
        const Bezout e = bezout(w.a, w.b);
        const IntMatrix2 col{e.s, -(w.b / e.g), e.t, w.a / e.g};
        w = w * col;
        v = v * col;
      }
      if (w.c != 0) {
        const Bezout e = bezout(w.a, w.c);
        const IntMatrix2 row{e.s, e.t, -(w.c / e.g), w.a / e.g};
        w = row * w;
        u = row * u;
      }
    }
    if (divides(w.a, w.d)) break;
    // Fold the second row into the first; the next pass brings gcd(a, d) to the pivot.
    const IntMatrix2 fold{1, 1, 0, 1};
    w = fold * w;
    u = fold * u;
  }
  if (w.a < 0) {
    w.a = -w.a;
    u.a = checked_neg(u.a);
    u.b = checked_neg(u.b);
  }
  if (w.d < 0) {
    w.d = -w.d;
    u.c = checked_neg(u.c);
    u.d = checked_neg(u.d);
  }
  return {u, w.a, w.d, v};
}

std::string_view to_string(TraceClass c) {
  switch (c) {
    case TraceClass::Hyperbolic: return "Hyperbolic";
    case TraceClass::UnipotentPlus: return "UnipotentPlus";
    case TraceClass::FiniteOrder: return "FiniteOrder";
    case TraceClass::Identity: return "Identity";
    case TraceClass::MinusIdentity: return "MinusIdentity";
  }
  return "?";
}

std::string_view to_string(UnipotentForm f) { return f == UnipotentForm::Upper ? "Upper" : "Lower"; }

namespace {

void require_sl2(const IntMatrix2& a, const char* what) {
  if (a.det() != 1)
    throw std::invalid_argument(std::string(what) + ": matrix " + a.str() + " has determinant " +
                                std::to_string(a.det()) + ", expected 1");
}

}  // namespace

TraceClass trace_class(const IntMatrix2& a) {
  require_sl2(a, "trace_class");
  if (a == IntMatrix2::identity()) return TraceClass::Identity;
  if (a == -IntMatrix2::identity()) return TraceClass::MinusIdentity;
  const std::int64_t tr = a.trace();
  if (tr >= -1 && tr <= 1) return TraceClass::FiniteOrder;
  if (tr == 2) return TraceClass::UnipotentPlus;
  return TraceClass::Hyperbolic;
}

bool equivalent_matrices(const IntMatrix2& m, const IntMatrix2& n) {
  const auto sm = smith_normal_form(m);
  const auto sn = smith_normal_form(n);
  return sm.h1 == sn.h1 && sm.h2 == sn.h2;
}

Trace2NormalForm trace2_normal_form(const IntMatrix2& a) {
  if (a.det() != 1 || trace_class(a) != TraceClass::UnipotentPlus)
    throw std::invalid_argument("trace2_normal_form: matrix " + a.str() + " is not of trace 2 with A != I");
  const IntMatrix2 n = a - IntMatrix2::identity();
  // Rows of the nilpotent N are proportional; any nonzero row annihilates ker N.
  Vec2 row = (n.a != 0 || n.b != 0) ? Vec2{n.a, n.b} : Vec2{n.c, n.d};
  const std::int64_t g = std::gcd(row.x1, row.x2);
  const Vec2 kernel{row.x2 / g, -row.x1 / g};

  const Bezout e = bezout(kernel.x1, kernel.x2);  // e.g == 1 as kernel is primitive
  const IntMatrix2 basis{kernel.x1, -e.t, kernel.x2, e.s};
  IntMatrix2 p = basis.inverse();
  IntMatrix2 conj = p * a * basis;
  if (conj.a != 1 || conj.c != 0 || conj.d != 1 || conj.b == 0)
    throw std::logic_error("trace2_normal_form: basis extension failed for " + a.str());

  Trace2NormalForm out;
  if (conj.b > 0) {
    out.h1 = conj.b;
    out.form = UnipotentForm::Upper;
  } else {
    const IntMatrix2 quarter{0, -1, 1, 0};
    p = quarter * p;
    out.h1 = -conj.b;
    out.form = UnipotentForm::Lower;
  }
  // P and -P conjugate alike; fix the sign so the first nonzero entry is positive.
  if (p.a < 0 || (p.a == 0 && p.b < 0)) p = -p;
  out.conjugator = p;

  if (p * a * p.inverse() != out.normal_form() || smith_normal_form(n).h1 != out.h1)
    throw std::logic_error("trace2_normal_form: verification failed for " + a.str());
  return out;
}

namespace {

bool reverses(const IntMatrix2& b, const IntMatrix2& a, const IntMatrix2& a_inv) {
  return b.det() == -1 && b * a == a_inv * b;
}

}  // namespace

ReversorResult reversing_symmetry(const IntMatrix2& a, std::int64_t bound) {
  require_sl2(a, "reversing_symmetry");
  if (a == IntMatrix2::identity() || a == -IntMatrix2::identity())
    throw std::invalid_argument("reversing_symmetry: A = +-I is excluded");
  if (bound < 0) throw std::invalid_argument("reversing_symmetry: bound must be nonnegative");

  const IntMatrix2 a_inv = a.inverse();
  const std::int64_t diff = checked_sub(a.a, a.d);
  ReversorResult result;
  result.bound = bound;

  auto accept = [&](const IntMatrix2& b, ReversorResult::Source src) {
    if (!reverses(b, a, a_inv)) throw std::logic_error("reversing_symmetry: candidate failed verification");
    result.status = ReversorResult::Status::Found;
    result.source = src;
    result.reversor = b;
    return result;
  };

  if (a.c != 0 && diff % a.c == 0) return accept({1, -(diff / a.c), 0, -1}, ReversorResult::Source::DivisibilityCriterion);
  if (a.b != 0 && diff % a.b == 0) return accept({1, 0, -(diff / a.b), -1}, ReversorResult::Source::DivisibilityCriterion);

  // Lexicographic scan over (p, q, r, s). For p != 0 the determinant condition
  // p*s - q*r = -1 pins s, so only one candidate per (p, q, r) survives.
  auto try_candidate = [&](std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s) {
    const __int128 ba[4] = {(__int128)p * a.a + (__int128)q * a.c, (__int128)p * a.b + (__int128)q * a.d,
                            (__int128)r * a.a + (__int128)s * a.c, (__int128)r * a.b + (__int128)s * a.d};
    const __int128 ab[4] = {(__int128)a_inv.a * p + (__int128)a_inv.b * r, (__int128)a_inv.a * q + (__int128)a_inv.b * s,
                            (__int128)a_inv.c * p + (__int128)a_inv.d * r, (__int128)a_inv.c * q + (__int128)a_inv.d * s};
    return ba[0] == ab[0] && ba[1] == ab[1] && ba[2] == ab[2] && ba[3] == ab[3];
  };
  for (std::int64_t p = -bound; p <= bound; ++p) {
    for (std::int64_t q = -bound; q <= bound; ++q) {
      for (std::int64_t r = -bound; r <= bound; ++r) {
        const __int128 qr = (__int128)q * r;
        if (p != 0) {
          const __int128 num = qr - 1;
          if (num % p != 0) continue;
          const __int128 s = num / p;
          if (s < -bound || s > bound) continue;
          if (try_candidate(p, q, r, static_cast<std::int64_t>(s)))
            return accept({p, q, r, static_cast<std::int64_t>(s)}, ReversorResult::Source::BoundedSearch);
        } else if (qr == 1) {
          for (std::int64_t s = -bound; s <= bound; ++s)
            if (try_candidate(p, q, r, s)) return accept({p, q, r, s}, ReversorResult::Source::BoundedSearch);
        }
      }
    }
  }
  return result;
}

int center_rank(const IntMatrix2& a) {
  require_sl2(a, "center_rank");
  const auto snf = smith_normal_form(a - IntMatrix2::identity());
  return (snf.h1 == 0 ? 1 : 0) + (snf.h2 == 0 ? 1 : 0);
}

}  // namespace rotk
