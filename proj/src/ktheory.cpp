#include "rotk/ktheory.hpp"

#include <random>

namespace rotk {

PVData pv_data(const IntMatrix2& a) {
  if (a.det() != 1) throw std::invalid_argument("pv_data: matrix " + a.str() + " is not in SL2(Z)");
  PVData pv;
  pv.matrix = IntMatrix2::identity() - a.inverse();
  pv.snf = smith_normal_form(pv.matrix);
  for (const std::int64_t h : {pv.snf.h1, pv.snf.h2}) {
    if (h == 0) {
      ++pv.coker_free_rank;
      ++pv.ker_rank;
    } else if (h > 1) {
      pv.coker_torsion.push_back(h);
    }
  }
  pv.degenerate = a == IntMatrix2::identity();
  return pv;
}

std::string_view to_string(K0Generator g) {
  switch (g) {
    case K0Generator::Unit: return "[1]_0";
    case K0Generator::RieffelClass: return "[iota(p_theta)]_0";
    case K0Generator::ExtraProjection: return "[P_A]_0";
  }
  return "?";
}

KInvariants k_invariants(const Angle& theta, const IntMatrix2& a) {
  const TraceClass cls = trace_class(a);
  if (!infinite_order(cls))
    throw HypothesisError("matrix " + a.str() + " (" + std::string(to_string(cls)) +
                          ") has finite order; the crossed-product K-theory requires A of infinite order");
  const PVData pv = pv_data(a);

  KInvariants k;
  k.trace_class = cls;
  k.h1 = pv.snf.h1;
  k.h2 = pv.snf.h2;
  // The automorphism acts trivially on K0(A_theta), so the PV sequence splits into
  // K0 = K0(A_theta) + ker(I - A^-1) and K1 = K0(A_theta) + coker(I - A^-1).
  k.k0_rank = 2 + pv.ker_rank;
  k.k1_rank = 2 + pv.coker_free_rank;
  k.k1_torsion = pv.coker_torsion;

  const Rational t = theta.exact().mod1();
  k.k0_generators = {K0Generator::Unit, K0Generator::RieffelClass};
  k.trace_pairing = {Rational(1), t};
  if (cls == TraceClass::UnipotentPlus) {
    k.k0_generators.push_back(K0Generator::ExtraProjection);
    k.trace_pairing.push_back(Rational(1));
    k.notes.push_back("[P_A]_0 is reported as an opaque class; it depends on the conjugation to normal form");
  }
  if (static_cast<int>(k.k0_generators.size()) != k.k0_rank)
    throw std::logic_error("k_invariants: generator count does not match the K0 rank");
  if (a.trace() == -2) k.notes.push_back("trace -2 with A != -I is of infinite order and treated as hyperbolic");
  if (t.num() == 0) k.notes.push_back("theta = 0: the Rieffel class lives in M_2(A_0) with pairing 0");
  if (!theta.is_exact())
    k.notes.push_back("real-valued angle " + theta.str() + " replaced by the rational approximant " + theta.exact().str());
  return k;
}

namespace {

void require_hyperbolic(const IntMatrix2& m, const char* which) {
  const TraceClass cls = trace_class(m);
  if (cls != TraceClass::Hyperbolic)
    throw HypothesisError(std::string(which) + " = " + m.str() + " is " + std::string(to_string(cls)) +
                          "; the obstruction requires tr not in {0, +-1, 2} and infinite order");
}

}  // namespace

Verdict isomorphism_obstruction(const Angle& theta, const IntMatrix2& a, const Angle& theta_prime,
                                const IntMatrix2& b, std::int64_t reversor_bound) {
  require_hyperbolic(a, "A");
  require_hyperbolic(b, "B");
  const IntMatrix2 id = IntMatrix2::identity();
  const bool k1_match = equivalent_matrices(id - a.inverse(), id - b.inverse());
  const bool exact = theta.is_exact() && theta_prime.is_exact();
  const bool angle_match = !exact || congruent_up_to_sign(theta.exact(), theta_prime.exact());

  Verdict v;
  std::string warning = exact ? "" : "; real-valued angles are not compared (warning only)";
  if (!angle_match) {
    v.kind = Verdict::Kind::Distinguished;
    v.reason = "angle";
    v.detail = theta.str() + " is not congruent to +-" + theta_prime.str() + " mod Z";
    if (!k1_match) v.detail += "; K1 torsion also differs";
    return v;
  }
  if (!k1_match) {
    v.kind = Verdict::Kind::Distinguished;
    v.reason = "K1";
    v.detail = "I - A^-1 and I - B^-1 are not unimodularly equivalent" + warning;
    return v;
  }

  v.kind = Verdict::Kind::NotDistinguished;
  v.detail = "invariants agree; this is a necessary condition only" + warning;
  if (exact && a == b) {
    if ((theta.exact() - theta_prime.exact()).is_integer()) {
      v.certified_isomorphic = true;
      v.reason = "certified";
      v.detail = "same matrix and theta = theta' mod Z: the algebras coincide";
    } else {
      const ReversorResult rev = reversing_symmetry(a, reversor_bound);
      if (rev.found()) {
        const ReversorAutomorphism phi(a, *rev.reversor);
        if (reversor_identity_check(theta, phi, 200, 0).passed()) {
          v.certified_isomorphic = true;
          v.reason = "certified";
          v.detail = "same matrix, theta = -theta' mod Z and reversor B = " + rev.reversor->str() +
                     " of determinant -1: isomorphic";
        }
      }
    }
  }
  return v;
}

bool trace2_theta0_isomorphic(const IntMatrix2& a, const IntMatrix2& b) {
  const TraceClass cls = trace_class(a);
  if (cls != TraceClass::UnipotentPlus)
    throw HypothesisError("A = " + a.str() + " is " + std::string(to_string(cls)) + "; expected tr A = 2 with A != I");
  if (b.det() != 1) throw std::invalid_argument("B = " + b.str() + " is not in SL2(Z)");
  if (b.trace() != 2 || b == IntMatrix2::identity()) return false;
  const IntMatrix2 id = IntMatrix2::identity();
  return equivalent_matrices(id - a.inverse(), id - b.inverse());
}

DeviationReport reversor_identity_check(const Angle& theta, const ReversorAutomorphism& phi, std::size_t samples,
                                        std::uint64_t seed) {
  const Cocycle<GroupElt> w = omega_tilde_cocycle(theta, phi.matrix());
  const Cocycle<GroupElt> w_neg = omega_tilde_cocycle(theta.negated(), phi.matrix());
  std::mt19937_64 rng(seed);
  DeviationReport rep;
  for (std::size_t i = 0; i < samples; ++i) {
    const GroupElt g = random_group_elt(rng, 20, 4);
    const GroupElt h = random_group_elt(rng, 20, 4);
    rep.record(std::abs(w(g, h) - w_neg(phi(g), phi(h))));
  }
  return rep;
}

AngleSymmetry reversor_angle_symmetry(const Angle& theta, const IntMatrix2& a, std::int64_t bound,
                                      std::size_t samples, std::uint64_t seed) {
  require_hyperbolic(a, "A");
  AngleSymmetry out;
  out.bound = bound;
  const ReversorResult rev = reversing_symmetry(a, bound);
  if (!rev.found()) return out;
  out.reversor = rev.reversor;
  const ReversorAutomorphism phi(a, *rev.reversor, seed);
  out.identity_check = reversor_identity_check(theta, phi, samples, seed);
  if (out.identity_check.passed()) {
    out.statement = "for A = " + a.str() + ", theta -> -theta yields isomorphic crossed products (reversor B = " +
                    rev.reversor->str() + ", det B = -1)";
  }
  return out;
}

}  // namespace rotk
