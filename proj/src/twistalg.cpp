#include "rotk/twistalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rotk {

AlgContext AlgContext::crossed(const Angle& theta, const IntMatrix2& a) {
  if (a.det() != 1) throw std::invalid_argument("crossed product context needs A in SL2(Z), got " + a.str());
  return {GroupKind::Crossed, theta, a};
}

namespace {

void prune(AlgElement::Terms& terms) {
  std::erase_if(terms, [](const auto& kv) { return std::abs(kv.second) < kPruneThreshold; });
}

void require_same_context(const AlgElement& f, const AlgElement& g, const char* what) {
  if (!(f.context() == g.context())) throw std::invalid_argument(std::string(what) + ": context mismatch");
}

// Group law of the context's group, keyed uniformly by GroupElt.
class ContextLaw {
 public:
  explicit ContextLaw(const AlgContext& ctx)
      : ctx_(ctx), semidirect_(ctx.kind == GroupKind::Crossed ? ctx.a : IntMatrix2::identity()) {}

  GroupElt identity() const { return {}; }
  GroupElt multiply(const GroupElt& g, const GroupElt& h) const {
    if (ctx_.kind == GroupKind::Lattice) return {g.x + h.x, 0};
    return semidirect_.multiply(g, h);
  }
  GroupElt inverse(const GroupElt& g) const {
    if (ctx_.kind == GroupKind::Lattice) return {-g.x, 0};
    return semidirect_.inverse(g);
  }
  Complex cocycle(const GroupElt& g, const GroupElt& h) const {
    if (ctx_.kind == GroupKind::Lattice) return omega(ctx_.theta, g.x, h.x);
    return omega(ctx_.theta, g.x, semidirect_.act(g.n, h.x));
  }

 private:
  AlgContext ctx_;
  SemidirectLaw semidirect_;
};

template <class Weight>
AlgElement convolve_impl(const AlgElement& f, const AlgElement& g, const ContextLaw& law, Weight&& weight,
                         std::size_t cap) {
  AlgElement::Terms out;
  for (const auto& [t, ft] : f.terms()) {
    for (const auto& [u, gu] : g.terms()) {
      out[law.multiply(t, u)] += ft * gu * weight(t, u);
      if (out.size() > cap)
        throw std::length_error("convolution support exceeds the cap of " + std::to_string(cap) + " terms");
    }
  }
  return AlgElement(f.context(), std::move(out));
}

}  // namespace

AlgElement::AlgElement(AlgContext ctx, Terms terms) : ctx_(std::move(ctx)), terms_(std::move(terms)) {
  if (ctx_.kind == GroupKind::Lattice) {
    for (const auto& [g, c] : terms_)
      if (g.n != 0) throw std::invalid_argument("lattice algebra element with nonzero Z-component");
  }
  prune(terms_);
}

AlgElement AlgElement::unit(const AlgContext& ctx) { return delta(ctx, GroupElt{}, 1.0); }

AlgElement AlgElement::delta(const AlgContext& ctx, const GroupElt& g, Complex c) {
  return AlgElement(ctx, Terms{{g, c}});
}

Complex AlgElement::coefficient(const GroupElt& g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? Complex{} : it->second;
}

AlgElement AlgElement::operator+(const AlgElement& o) const {
  require_same_context(*this, o, "add");
  Terms out = terms_;
  for (const auto& [g, c] : o.terms_) out[g] += c;
  return AlgElement(ctx_, std::move(out));
}

AlgElement AlgElement::operator-(const AlgElement& o) const { return *this + o * Complex(-1.0); }

AlgElement AlgElement::operator*(Complex s) const {
  Terms out;
  for (const auto& [g, c] : terms_) out.emplace(g, c * s);
  return AlgElement(ctx_, std::move(out));
}

double AlgElement::max_deviation(const AlgElement& o) const {
  require_same_context(*this, o, "compare");
  double dev = 0.0;
  for (const auto& [g, c] : terms_) dev = std::max(dev, std::abs(c - o.coefficient(g)));
  for (const auto& [g, c] : o.terms_)
    if (!terms_.contains(g)) dev = std::max(dev, std::abs(c));
  return dev;
}

AlgElement convolve(const AlgElement& f, const AlgElement& g, std::size_t support_cap) {
  require_same_context(f, g, "convolve");
  const ContextLaw law(f.context());
  return convolve_impl(
      f, g, law, [&law](const GroupElt& t, const GroupElt& u) { return law.cocycle(t, u); }, support_cap);
}

AlgElement convolve_with(const AlgElement& f, const AlgElement& g, const Cocycle<GroupElt>& w,
                         std::size_t support_cap) {
  require_same_context(f, g, "convolve");
  const ContextLaw law(f.context());
  return convolve_impl(f, g, law, w, support_cap);
}

AlgElement power(const AlgElement& f, std::int64_t k) {
  if (k < 0) return power(involution(f), -k);
  AlgElement out = AlgElement::unit(f.context());
  for (std::int64_t i = 0; i < k; ++i) out = convolve(out, f);
  return out;
}

AlgElement involution(const AlgElement& f) {
  const ContextLaw law(f.context());
  AlgElement::Terms out;
  for (const auto& [t, c] : f.terms()) {
    const GroupElt s = law.inverse(t);
    out[s] += std::conj(law.cocycle(s, t)) * std::conj(c);
  }
  return AlgElement(f.context(), std::move(out));
}

Complex canonical_trace(const AlgElement& f) { return f.coefficient(GroupElt{}); }

AlgElement alpha(const IntMatrix2& a, const AlgElement& f) {
  if (a.det() != 1) throw std::invalid_argument("alpha: matrix " + a.str() + " is not in SL2(Z)");
  if (f.context().kind != GroupKind::Lattice) throw std::invalid_argument("alpha: element is not in the lattice algebra");
  AlgElement::Terms out;
  for (const auto& [g, c] : f.terms()) out.emplace(GroupElt{a * g.x, 0}, c);
  return AlgElement(f.context(), std::move(out));
}

AlgElement embed(const IntMatrix2& a, const AlgElement& f) {
  if (f.context().kind != GroupKind::Lattice) throw std::invalid_argument("embed: element is not in the lattice algebra");
  return AlgElement(AlgContext::crossed(f.context().theta, a), f.terms());
}

AlgElement implementing_unitary(const Angle& theta, const IntMatrix2& a) {
  return AlgElement::delta(AlgContext::crossed(theta, a), GroupElt{{0, 0}, 1});
}

double covariance_check(const IntMatrix2& a, const Angle& theta, std::span<const AlgElement> samples) {
  const AlgElement u = implementing_unitary(theta, a);
  const AlgElement u_star = involution(u);
  double dev = 0.0;
  for (const AlgElement& f : samples) {
    if (!(f.context() == AlgContext::lattice(theta))) throw std::invalid_argument("covariance_check: sample angle mismatch");
    const AlgElement lhs = convolve(convolve(u, embed(a, f)), u_star);
    const AlgElement rhs = embed(a, alpha(a, f));
    dev = std::max(dev, lhs.max_deviation(rhs));
  }
  return dev;
}

AlgElement random_element(const AlgContext& ctx, std::mt19937_64& rng, std::size_t terms, std::int64_t radius,
                          std::int64_t max_power) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  AlgElement::Terms out;
  const std::int64_t power_range = ctx.kind == GroupKind::Lattice ? 0 : max_power;
  for (std::size_t attempts = 0; out.size() < terms && attempts < 100 * terms + 100; ++attempts) {
    const GroupElt g = random_group_elt(rng, radius, power_range);
    const double re = coeff(rng);
    const double im = coeff(rng);
    out.emplace(g, Complex(re, im) / std::sqrt(2.0));
  }
  return AlgElement(ctx, std::move(out));
}

nlohmann::json to_json(const AlgElement& f) {
  nlohmann::json out = nlohmann::json::array();
  const bool crossed = f.context().kind == GroupKind::Crossed;
  for (const auto& [g, c] : f.terms()) {
    nlohmann::json elem = crossed ? nlohmann::json::array({g.x.x1, g.x.x2, g.n}) : nlohmann::json::array({g.x.x1, g.x.x2});
    out.push_back({{"element", elem}, {"re", c.real()}, {"im", c.imag()}});
  }
  return out;
}

AlgElement element_from_json(const nlohmann::json& j, const AlgContext& ctx) {
  if (!j.is_array()) throw std::invalid_argument("algebra element JSON must be an array");
  const std::size_t arity = ctx.kind == GroupKind::Crossed ? 3 : 2;
  AlgElement::Terms terms;
  for (const auto& item : j) {
    const auto& elem = item.at("element");
    if (!elem.is_array() || elem.size() != arity)
      throw std::invalid_argument("algebra element entry has " + std::to_string(elem.size()) + " coordinates, expected " +
                                  std::to_string(arity));
    GroupElt g{{elem[0].get<std::int64_t>(), elem[1].get<std::int64_t>()}, arity == 3 ? elem[2].get<std::int64_t>() : 0};
    terms[g] += Complex(item.at("re").get<double>(), item.at("im").get<double>());
  }
  return AlgElement(ctx, std::move(terms));
}

}  // namespace rotk
