#include "rotk/report.hpp"

#include <sstream>

#include "rotk/verify.hpp"

#ifndef ROTK_VERSION
#define ROTK_VERSION "0.0.0"
#endif

namespace rotk {

std::string_view tool_version() { return ROTK_VERSION; }

Json report_header(std::string_view command) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["tool"] = {{"name", "rotk"}, {"version", std::string(tool_version())}};
  j["command"] = std::string(command);
  return j;
}

Json tolerances_json() {
  return {{"cocycle", tolerance::kCocycle},
          {"associativity", tolerance::kAssociativity},
          {"trace_property", tolerance::kTraceProperty},
          {"algebra", tolerance::kAlgebra},
          {"coefficient_equality", kCoefficientTolerance},
          {"rep_multiplicativity", tolerance::kRepMultiplicativity},
          {"apply_homomorphism", tolerance::kApplyHomomorphism},
          {"numeric_trace", tolerance::kNumericTrace},
          {"rieffel_trace", tolerance::kRieffelTrace},
          {"projection", tolerance::kProjection},
          {"self_adjoint", tolerance::kSelfAdjoint}};
}

Json invariants_json(const Angle& theta, const IntMatrix2& a, const KInvariants& k) {
  Json generators = Json::array();
  for (const auto g : k.k0_generators) generators.push_back(std::string(to_string(g)));
  Json pairing = Json::array();
  for (const auto& r : k.trace_pairing) pairing.push_back(r.str());
  Json j;
  j["theta"] = theta.str();
  j["matrix"] = a.str();
  j["trace_class"] = std::string(to_string(k.trace_class));
  j["K0"] = {{"rank", k.k0_rank}, {"generators", generators}, {"pairing", pairing}};
  j["K1"] = {{"rank", k.k1_rank}, {"torsion", k.k1_torsion}};
  j["snf"] = {k.h1, k.h2};
  j["notes"] = k.notes;
  return j;
}

Json verdict_json(const Verdict& v) {
  Json j;
  j["verdict"] = v.distinguished() ? "Distinguished" : "NotDistinguished";
  j["reason"] = v.reason;
  j["certified_isomorphic"] = v.certified_isomorphic;
  j["detail"] = v.detail;
  return j;
}

Json rieffel_json(const RieffelData& data, const TraceEstimate& est, double projection_defect) {
  Json j;
  j["theta"] = data.theta().value().str();
  j["eps"] = data.eps().str();
  j["trace_estimate"] = est.value;
  j["error_estimate"] = est.error_estimate;
  j["projection_defect"] = projection_defect;
  return j;
}

std::vector<CorpusLine> parse_corpus(std::istream& in) {
  std::vector<CorpusLine> out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    try {
      const auto semi = line.find(';');
      if (semi == std::string::npos) throw std::invalid_argument("expected 'theta;a,b;c,d'");
      CorpusEntry e;
      e.line = line_no;
      e.theta = Rational::parse(line.substr(0, semi));
      e.matrix = IntMatrix2::parse(line.substr(semi + 1));
      out.emplace_back(e);
    } catch (const std::exception& ex) {
      out.emplace_back(CorpusError{line_no, raw, ex.what()});
    }
  }
  return out;
}

namespace {

bool same_groups(const KInvariants& l, const KInvariants& r) {
  return l.k0_rank == r.k0_rank && l.k1_rank == r.k1_rank && l.k1_torsion == r.k1_torsion;
}

Json pair_verdict(const CorpusEntry& x, const KInvariants& kx, const CorpusEntry& y, const KInvariants& ky) {
  if (kx.trace_class == TraceClass::Hyperbolic && ky.trace_class == TraceClass::Hyperbolic)
    return verdict_json(isomorphism_obstruction(Angle(x.theta), x.matrix, Angle(y.theta), y.matrix));
  Verdict v;
  if (!same_groups(kx, ky)) {
    v.kind = Verdict::Kind::Distinguished;
    v.reason = "K-groups";
    v.detail = "K0/K1 ranks or K1 torsion differ";
  } else if (kx.trace_class == TraceClass::UnipotentPlus && ky.trace_class == TraceClass::UnipotentPlus &&
             x.theta.mod1().num() == 0 && y.theta.mod1().num() == 0) {
    if (trace2_theta0_isomorphic(x.matrix, y.matrix)) {
      v.certified_isomorphic = true;
      v.reason = "certified";
      v.detail = "theta = 0, trace 2 and equal Smith forms: isomorphic";
    } else {
      v.kind = Verdict::Kind::Distinguished;
      v.reason = "K1";
      v.detail = "Smith forms of I - A^-1 differ";
    }
  } else {
    v.detail = "K-groups agree; no angle obstruction is available for trace-2 matrices";
  }
  return verdict_json(v);
}

}  // namespace

Json corpus_report(const std::vector<CorpusLine>& lines) {
  Json rows = Json::array();
  Json errors = Json::array();
  std::vector<std::pair<CorpusEntry, KInvariants>> valid;
  for (const auto& item : lines) {
    if (const auto* err = std::get_if<CorpusError>(&item)) {
      errors.push_back({{"line", err->line}, {"text", err->text}, {"error", err->message}});
      continue;
    }
    const auto& e = std::get<CorpusEntry>(item);
    try {
      const Angle theta(e.theta);
      KInvariants k = k_invariants(theta, e.matrix);
      Json row = invariants_json(theta, e.matrix, k);
      row["line"] = e.line;
      rows.push_back(std::move(row));
      valid.emplace_back(e, std::move(k));
    } catch (const std::exception& ex) {
      errors.push_back({{"line", e.line}, {"text", e.theta.str() + ";" + e.matrix.str()}, {"error", ex.what()}});
    }
  }
  Json pairs = Json::array();
  for (std::size_t i = 0; i < valid.size(); ++i) {
    for (std::size_t j = i + 1; j < valid.size(); ++j) {
      Json p = pair_verdict(valid[i].first, valid[i].second, valid[j].first, valid[j].second);
      Json entry;
      entry["first"] = valid[i].first.line;
      entry["second"] = valid[j].first.line;
      entry.update(p);
      pairs.push_back(std::move(entry));
    }
  }
  Json j;
  j["rows"] = std::move(rows);
  j["errors"] = std::move(errors);
  j["pairs"] = std::move(pairs);
  return j;
}

}  // namespace rotk
