#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rotk/cocycle.hpp"
#include "rotk/intmat.hpp"

namespace rotk {

/// Raised when an input lies outside the hypotheses of the K-theory results
/// (finite-order matrices, wrong trace class).
class HypothesisError : public std::domain_error {
 public:
  explicit HypothesisError(const std::string& what) : std::domain_error(what) {}
};

/// Pimsner-Voiculescu bookkeeping for id - alpha^-1 on K1(A_theta) = Z^2,
/// which acts by the matrix I - A^-1.
struct PVData {
  IntMatrix2 matrix;  // I - A^-1
  SNFDecomposition snf;
  int coker_free_rank = 0;
  std::vector<std::int64_t> coker_torsion;  // SNF invariants > 1, divisor order
  int ker_rank = 0;
  bool degenerate = false;  // A = I
};

PVData pv_data(const IntMatrix2& a);

enum class K0Generator { Unit, RieffelClass, ExtraProjection };

std::string_view to_string(K0Generator g);

struct KInvariants {
  TraceClass trace_class = TraceClass::Hyperbolic;
  int k0_rank = 0;
  int k1_rank = 0;
  std::vector<std::int64_t> k1_torsion;
  std::vector<K0Generator> k0_generators;
  std::vector<Rational> trace_pairing;  // aligned with k0_generators
  std::int64_t h1 = 0;
  std::int64_t h2 = 0;
  std::vector<std::string> notes;

  friend bool operator==(const KInvariants& l, const KInvariants& r) {
    return l.trace_class == r.trace_class && l.k0_rank == r.k0_rank && l.k1_rank == r.k1_rank &&
           l.k1_torsion == r.k1_torsion && l.k0_generators == r.k0_generators &&
           l.trace_pairing == r.trace_pairing && l.h1 == r.h1 && l.h2 == r.h2;
  }
};

/// K0/K1 of A_theta x|_A Z for A of infinite order (Hyperbolic or UnipotentPlus).
///
/// K0 = coker(0) + ker(I - A^-1) = Z^2 + Z^{ker rank}, generated by [1], [iota(p_theta)]
/// and, for trace 2, the extra projection [P_A]; K1 = Z^2 + coker(I - A^-1).
/// The pairing with any tracial state is (1, theta) or (1, theta, 1) with theta
/// taken mod 1. Finite-order inputs throw HypothesisError.
KInvariants k_invariants(const Angle& theta, const IntMatrix2& a);

struct Verdict {
  enum class Kind { Distinguished, NotDistinguished };

  Kind kind = Kind::NotDistinguished;
  // "angle" or "K1" when distinguished; "invariants agree" or "certified" otherwise.
  std::string reason = "invariants agree";
  std::string detail;
  bool certified_isomorphic = false;

  bool distinguished() const { return kind == Kind::Distinguished; }
};

/// Necessary conditions for A_theta x|_A Z = A_theta' x|_B Z with both matrices
/// hyperbolic: theta = +-theta' mod Z and I - A^-1 ~ I - B^-1. A NotDistinguished
/// verdict claims isomorphism only when certified (same matrix and either equal
/// angles mod Z or a verified reversor of determinant -1 within `reversor_bound`).
Verdict isomorphism_obstruction(const Angle& theta, const IntMatrix2& a, const Angle& theta_prime,
                                const IntMatrix2& b, std::int64_t reversor_bound = 10);

/// At theta = theta' = 0 with tr A = 2, A != I: the crossed products agree iff
/// tr B = 2, B != I and the Smith forms of I - A^-1 and I - B^-1 coincide.
bool trace2_theta0_isomorphic(const IntMatrix2& a, const IntMatrix2& b);

struct AngleSymmetry {
  std::optional<IntMatrix2> reversor;
  std::optional<std::string> statement;
  DeviationReport identity_check;
  std::int64_t bound = 0;
};

/// If A has a reversor B of determinant -1 within the bound, checks
/// omega~_theta = omega~_{-theta} o Phi_B on `samples` seeded draws and emits the
/// angle-flip statement. Non-hyperbolic A throws HypothesisError.
AngleSymmetry reversor_angle_symmetry(const Angle& theta, const IntMatrix2& a, std::int64_t bound,
                                      std::size_t samples = 200, std::uint64_t seed = 0);

/// Pointwise check of omega~_theta(g, h) = omega~_{-theta}(Phi_B g, Phi_B h).
DeviationReport reversor_identity_check(const Angle& theta, const ReversorAutomorphism& phi, std::size_t samples,
                                        std::uint64_t seed);

}  // namespace rotk
