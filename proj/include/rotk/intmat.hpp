#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace rotk {

/// Integer column vector (x1, x2).
struct Vec2 {
  std::int64_t x1 = 0;
  std::int64_t x2 = 0;

  friend auto operator<=>(const Vec2&, const Vec2&) = default;
  Vec2 operator+(const Vec2& o) const;
  Vec2 operator-(const Vec2& o) const;
  Vec2 operator-() const;
};

/// 2x2 integer matrix [[a, b], [c, d]]. Arithmetic is overflow-checked and throws
/// std::overflow_error rather than wrapping.
struct IntMatrix2 {
  std::int64_t a = 0, b = 0, c = 0, d = 0;

  friend auto operator<=>(const IntMatrix2&, const IntMatrix2&) = default;

  static constexpr IntMatrix2 identity() { return {1, 0, 0, 1}; }

  IntMatrix2 operator*(const IntMatrix2& o) const;
  IntMatrix2 operator+(const IntMatrix2& o) const;
  IntMatrix2 operator-(const IntMatrix2& o) const;
  IntMatrix2 operator-() const;
  Vec2 operator*(const Vec2& v) const;

  std::int64_t det() const;
  std::int64_t trace() const;
  bool in_sl2() const { return det() == 1; }
  bool in_gl2() const { const auto d0 = det(); return d0 == 1 || d0 == -1; }

  /// Inverse of a unimodular matrix; throws std::domain_error when det is not +-1.
  IntMatrix2 inverse() const;

  std::string str() const;
  /// Parses the "a,b;c,d" row-major text format.
  static IntMatrix2 parse(std::string_view text);
};

std::ostream& operator<<(std::ostream& os, const IntMatrix2& m);
std::ostream& operator<<(std::ostream& os, const Vec2& v);

/// Largest |n| accepted by matrix_power.
inline constexpr std::int64_t kMaxPower = 62;

/// A^n for |n| <= kMaxPower; negative n uses A^-1 (A must be unimodular then).
IntMatrix2 matrix_power(const IntMatrix2& a, std::int64_t n);

/// U * M * V = diag(h1, h2) with det U, det V = +-1, h1, h2 >= 0 and h1 | h2.
struct SNFDecomposition {
  IntMatrix2 left;
  std::int64_t h1 = 0;
  std::int64_t h2 = 0;
  IntMatrix2 right;

  IntMatrix2 diag() const { return {h1, 0, 0, h2}; }
};

SNFDecomposition smith_normal_form(const IntMatrix2& m);

enum class TraceClass { Hyperbolic, UnipotentPlus, FiniteOrder, Identity, MinusIdentity };

std::string_view to_string(TraceClass c);

/// Classifies an SL2(Z) matrix. Throws std::invalid_argument if det != 1.
/// Identity and MinusIdentity take precedence over FiniteOrder; tr = -2 with
/// A != -I is infinite order and lands in Hyperbolic.
TraceClass trace_class(const IntMatrix2& a);

inline bool infinite_order(TraceClass c) {
  return c == TraceClass::Hyperbolic || c == TraceClass::UnipotentPlus;
}

/// Unimodular equivalence: equal canonical Smith forms.
bool equivalent_matrices(const IntMatrix2& m, const IntMatrix2& n);

enum class UnipotentForm { Upper, Lower };

std::string_view to_string(UnipotentForm f);

struct Trace2NormalForm {
  std::int64_t h1 = 0;
  UnipotentForm form = UnipotentForm::Upper;
  IntMatrix2 conjugator;  // P with P * A * P^-1 == normal_form()

  IntMatrix2 normal_form() const {
    return form == UnipotentForm::Upper ? IntMatrix2{1, h1, 0, 1} : IntMatrix2{1, 0, h1, 1};
  }
};

/// Conjugates a trace-2 matrix A != I to [[1,h1],[0,1]] or [[1,0],[h1,1]] with h1 > 0.
///
/// A - I is nilpotent, so its kernel is a rank-one lattice spanned by a primitive
/// vector v. Extending v to a positively oriented basis Q puts Q^-1 A Q in upper
/// form [[1,k],[0,1]]; when k < 0 a further conjugation by [[0,-1],[1,0]] yields
/// the lower form with entry -k. Throws std::invalid_argument outside UnipotentPlus.
Trace2NormalForm trace2_normal_form(const IntMatrix2& a);

struct ReversorResult {
  enum class Status { Found, NotFoundWithinBound };
  enum class Source { None, DivisibilityCriterion, BoundedSearch };

  Status status = Status::NotFoundWithinBound;
  Source source = Source::None;
  std::optional<IntMatrix2> reversor;
  std::int64_t bound = 0;

  bool found() const { return status == Status::Found; }
};

/// Looks for B in GL2(Z) with det B = -1 and B A = A^-1 B.
///
/// If c | (a-d) with c != 0 returns [[1, -(a-d)/c], [0, -1]]; else if b | (a-d)
/// with b != 0 returns [[1, 0], [-(a-d)/b, -1]]. Otherwise scans all entries in
/// [-bound, bound] in lexicographic order of (b11, b12, b21, b22) and returns the
/// first hit. A miss is reported as NotFoundWithinBound, never as nonexistence.
/// Requires det A = 1 and A != +-I.
ReversorResult reversing_symmetry(const IntMatrix2& a, std::int64_t bound);

/// Rank of ker(A - I) over Z, i.e. the rank of the center of Z^2 x|_A Z for A of
/// infinite order.
int center_rank(const IntMatrix2& a);

}  // namespace rotk
