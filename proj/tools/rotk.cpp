// rotk: K-theory invariants of crossed products of rotation algebras by SL2(Z).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "rotk/ktheory.hpp"
#include "rotk/report.hpp"
#include "rotk/verify.hpp"

namespace {

using rotk::Json;

enum Exit { kOk = 0, kUsage = 1, kHypothesis = 2, kVerifyFailed = 3 };

struct Options {
  std::string theta = "1/3";
  std::string matrix = "2,1;1,1";
  std::string theta2;
  std::string matrix2;
  std::int64_t bound = 40;
  std::int64_t grid = 4096;
  std::string epsilon;
  std::uint64_t seed = 0;
  std::string suite = "all";
  std::string file;
  std::string format = "json";
};

void emit(const Json& j, const Options& opt) {
  if (opt.format == "json") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  // Text mode: one "key: value" line per top-level field.
  for (const auto& [k, v] : j.items()) std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
}

Json with_header(std::string_view command, Json body) {
  Json out = rotk::report_header(command);
  out["tolerances"] = rotk::tolerances_json();
  for (auto& [k, v] : body.items()) out[k] = std::move(v);
  return out;
}

int cmd_invariants(const Options& opt) {
  const rotk::Angle theta(rotk::Rational::parse(opt.theta));
  const rotk::IntMatrix2 a = rotk::IntMatrix2::parse(opt.matrix);
  const rotk::KInvariants k = rotk::k_invariants(theta, a);
  emit(with_header("invariants", rotk::invariants_json(theta, a, k)), opt);
  return kOk;
}

int cmd_classify_pair(const Options& opt) {
  if (opt.theta2.empty() && opt.matrix2.empty()) throw std::invalid_argument("classify-pair needs --theta2 and/or --matrix2");
  const rotk::Rational t1 = rotk::Rational::parse(opt.theta);
  const rotk::Rational t2 = opt.theta2.empty() ? t1 : rotk::Rational::parse(opt.theta2);
  const rotk::IntMatrix2 a = rotk::IntMatrix2::parse(opt.matrix);
  const rotk::IntMatrix2 b = opt.matrix2.empty() ? a : rotk::IntMatrix2::parse(opt.matrix2);
  for (const auto& m : {a, b}) {
    const auto cls = rotk::trace_class(m);
    if (!rotk::infinite_order(cls))
      throw rotk::HypothesisError("matrix " + m.str() + " has finite order; crossed-product invariants need infinite order");
  }
  Json body;
  body["first"] = {{"theta", t1.str()}, {"matrix", a.str()}};
  body["second"] = {{"theta", t2.str()}, {"matrix", b.str()}};
  const auto ca = rotk::trace_class(a), cb = rotk::trace_class(b);
  if (ca == rotk::TraceClass::Hyperbolic && cb == rotk::TraceClass::Hyperbolic) {
    body.update(rotk::verdict_json(rotk::isomorphism_obstruction(rotk::Angle(t1), a, rotk::Angle(t2), b, opt.bound)));
  } else if (ca == rotk::TraceClass::UnipotentPlus && cb == rotk::TraceClass::UnipotentPlus &&
             t1.mod1().num() == 0 && t2.mod1().num() == 0) {
    rotk::Verdict v;
    if (rotk::trace2_theta0_isomorphic(a, b)) {
      v.certified_isomorphic = true;
      v.reason = "certified";
      v.detail = "theta = 0, trace 2 and equal Smith forms of I - A^-1: isomorphic";
    } else {
      v.kind = rotk::Verdict::Kind::Distinguished;
      v.reason = "K1";
      v.detail = "Smith forms of I - A^-1 and I - B^-1 differ";
    }
    body.update(rotk::verdict_json(v));
  } else {
    throw rotk::HypothesisError(
        "classify-pair needs both matrices hyperbolic, or both of trace 2 with theta = theta' = 0 mod Z; got " +
        std::string(rotk::to_string(ca)) + " and " + std::string(rotk::to_string(cb)));
  }
  emit(with_header("classify-pair", std::move(body)), opt);
  return kOk;
}

int cmd_verify(const Options& opt) {
  rotk::VerifyConfig cfg;
  cfg.theta = rotk::Rational::parse(opt.theta);
  cfg.matrix = rotk::IntMatrix2::parse(opt.matrix);
  cfg.bound = opt.bound;
  cfg.grid = opt.grid;
  if (!opt.epsilon.empty()) cfg.eps = rotk::Rational::parse(opt.epsilon);
  cfg.seed = opt.seed;
  const auto suites = rotk::run_suites(opt.suite, cfg);
  Json list = Json::array();
  bool ok = true;
  for (const auto& s : suites) {
    list.push_back(rotk::to_json(s));
    ok = ok && s.passed();
  }
  Json body;
  body["config"] = {{"suite", opt.suite}, {"theta", cfg.theta.str()}, {"matrix", cfg.matrix.str()},
                    {"bound", cfg.bound},  {"grid", cfg.grid},          {"seed", cfg.seed}};
  if (cfg.eps) body["config"]["epsilon"] = cfg.eps->str();
  body["passed"] = ok;
  body["suites"] = std::move(list);
  emit(with_header("verify", std::move(body)), opt);
  for (const auto& s : suites)
    for (const auto& p : s.properties)
      if (!p.passed) std::cerr << "FAIL " << s.suite << ": " << p.name << " (" << p.detail << ")\n";
  return ok ? kOk : kVerifyFailed;
}

int cmd_corpus(const Options& opt) {
  std::vector<rotk::CorpusLine> lines;
  if (opt.file == "-") {
    lines = rotk::parse_corpus(std::cin);
  } else {
    std::ifstream in(opt.file);
    if (!in) throw std::invalid_argument("cannot open corpus file '" + opt.file + "'");
    lines = rotk::parse_corpus(in);
  }
  Json body = rotk::corpus_report(lines);
  for (const auto& e : body["errors"])
    std::cerr << "line " << e["line"].get<std::size_t>() << ": " << e["error"].get<std::string>() << '\n';
  body = Json{{"file", opt.file}, {"rows", body["rows"]}, {"errors", body["errors"]}, {"pairs", body["pairs"]}};
  emit(with_header("corpus", std::move(body)), opt);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"K-theory invariants of crossed products of rotation algebras by SL2(Z) matrices"};
  app.set_version_flag("--version", std::string(rotk::tool_version()));
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  auto* inv = app.add_subcommand("invariants", "K0/K1 and the trace pairing for one (theta, A)");
  inv->add_option("--theta", opt.theta, "Angle p/q")->required();
  inv->add_option("--matrix", opt.matrix, "Matrix a,b;c,d")->required();

  auto* pair = app.add_subcommand("classify-pair", "Isomorphism obstructions between two crossed products");
  pair->add_option("--theta", opt.theta, "First angle")->required();
  pair->add_option("--matrix", opt.matrix, "First matrix")->required();
  pair->add_option("--theta2", opt.theta2, "Second angle (defaults to the first)");
  pair->add_option("--matrix2", opt.matrix2, "Second matrix (defaults to the first)");
  pair->add_option("--bound", opt.bound, "Reversor search bound")->capture_default_str();

  auto* ver = app.add_subcommand("verify", "Run the seeded property suites");
  ver->add_option("--suite", opt.suite, "cocycle, algebra, representation, rieffel, reversor or all")
      ->capture_default_str();
  ver->add_option("--theta", opt.theta, "Angle p/q")->capture_default_str();
  ver->add_option("--matrix", opt.matrix, "Matrix a,b;c,d")->capture_default_str();
  ver->add_option("--bound", opt.bound, "Reversor search bound")->capture_default_str();
  ver->add_option("--grid", opt.grid, "Quadrature points for the projection trace")->capture_default_str();
  ver->add_option("--epsilon", opt.epsilon, "Ramp width r/s for the projection");
  ver->add_option("--seed", opt.seed, "Sampler seed")->capture_default_str();

  auto* cor = app.add_subcommand("corpus", "Batch invariants and pairwise obstructions");
  cor->add_option("--file", opt.file, "Corpus file, '-' for stdin")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*inv) return cmd_invariants(opt);
    if (*pair) return cmd_classify_pair(opt);
    if (*ver) return cmd_verify(opt);
    if (*cor) return cmd_corpus(opt);
  } catch (const rotk::HypothesisError& e) {
    std::cerr << "hypothesis violated: " << e.what() << '\n';
    return kHypothesis;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
