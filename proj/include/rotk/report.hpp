#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "rotk/ktheory.hpp"
#include "rotk/rotrep.hpp"

namespace rotk {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

std::string_view tool_version();

/// {"schema", "tool": {"name", "version"}, "command"}; every report starts with this.
Json report_header(std::string_view command);

/// Tolerances used by the verification suites, keyed by property family.
Json tolerances_json();

/// {theta, matrix, trace_class, K0: {rank, generators, pairing}, K1: {rank, torsion}, snf: [h1, h2], notes}
Json invariants_json(const Angle& theta, const IntMatrix2& a, const KInvariants& k);

Json verdict_json(const Verdict& v);

/// {theta, trace_estimate, error_estimate, projection_defect}
Json rieffel_json(const RieffelData& data, const TraceEstimate& est, double projection_defect);

/// One "theta;a,b;c,d" corpus line.
struct CorpusEntry {
  std::size_t line = 0;
  Rational theta;
  IntMatrix2 matrix;
};

struct CorpusError {
  std::size_t line = 0;
  std::string text;
  std::string message;
};

using CorpusLine = std::variant<CorpusEntry, CorpusError>;

/// Parses a corpus stream; blank lines and '#' comments are skipped, malformed
/// lines become CorpusError entries.
std::vector<CorpusLine> parse_corpus(std::istream& in);

/// Batch invariants plus the pairwise obstruction table. Rows whose matrix falls
/// outside the hypotheses are reported as errors and excluded from the pairs.
Json corpus_report(const std::vector<CorpusLine>& lines);

}  // namespace rotk
