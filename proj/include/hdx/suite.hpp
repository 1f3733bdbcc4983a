#pragma once

// The acceptance battery: criteria 1-12 with pinned tolerances, shared by
// the command line `suite` and the acceptance test binary.

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hdx {

inline constexpr const char* kToolVersion = "0.1.0";

struct SuiteOptions {
  bool quick = false;
  std::uint64_t seed = 1;
  unsigned workers = 0;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  nlohmann::json details;       // deterministic for fixed options
  nlohmann::json measurements;  // wall time and memory
};

struct SuiteReport {
  SuiteOptions options;
  std::vector<CriterionResult> criteria;  // ordered by id

  bool pass() const;
  /// Parameters, caps, seed, version and per-criterion details. Measurements
  /// are included only on request, since they differ between runs.
  nlohmann::json to_json(bool with_measurements = false) const;
};

/// Runs every criterion. on_result sees each result as it finishes (not in
/// id order).
SuiteReport run_suite(const SuiteOptions& opts,
                      const std::function<void(const CriterionResult&)>& on_result = {});

/// Criteria ids run by run_suite, in order.
std::vector<int> criterion_ids();

} // namespace hdx
