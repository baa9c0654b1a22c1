#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rotk/report.hpp"

namespace rotk {

namespace tolerance {
inline constexpr double kCocycle = 1e-12;
inline constexpr double kAssociativity = 1e-11;
inline constexpr double kTraceProperty = 1e-12;
inline constexpr double kAlgebra = 1e-12;
inline constexpr double kRepMultiplicativity = 1e-11;
inline constexpr double kApplyHomomorphism = 1e-10;
inline constexpr double kNumericTrace = 1e-10;
inline constexpr double kRieffelTrace = 1e-5;
inline constexpr double kProjection = 1e-9;
inline constexpr double kSelfAdjoint = 1e-12;
}  // namespace tolerance

struct PropertyResult {
  std::string name;
  std::size_t samples = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<PropertyResult> properties;
  Json extra = Json::object();

  bool passed() const;
};

struct VerifyConfig {
  Rational theta{1, 3};
  IntMatrix2 matrix{2, 1, 1, 1};
  std::int64_t bound = 40;
  std::int64_t grid = 4096;
  std::optional<Rational> eps;
  std::uint64_t seed = 0;
};

/// cocycle, algebra, representation, rieffel, reversor.
const std::vector<std::string>& suite_names();

/// Runs one named suite, or all of them for "all". Unknown names throw
/// std::invalid_argument. All sampling flows from config.seed.
std::vector<SuiteReport> run_suites(std::string_view name, const VerifyConfig& config);

SuiteReport run_cocycle_suite(const VerifyConfig& config);
SuiteReport run_algebra_suite(const VerifyConfig& config);
SuiteReport run_representation_suite(const VerifyConfig& config);
SuiteReport run_rieffel_suite(const VerifyConfig& config);
SuiteReport run_reversor_suite(const VerifyConfig& config);

Json to_json(const SuiteReport& suite);

}  // namespace rotk
