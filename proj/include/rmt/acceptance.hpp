#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "rmt/io.hpp"

namespace rmt {

struct CriterionResult {
  int id = 0;
  std::string group;
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::string detail;
};

struct AcceptanceOptions {
  /// Groups to run (combinatorics, spectra, kernels, toy, invariants);
  /// empty runs all.
  std::set<std::string> only;
  unsigned workers = 0;
  std::uint64_t seed = 20240601;
  /// Directory of the Tracy-Widom table cache.
  std::filesystem::path cache_dir = ".";
};

std::vector<std::string> acceptance_groups();

/// Runs every selected criterion; a throwing check is recorded as a failure
/// and the suite continues. Each result line is echoed to `log` as it
/// completes. A criterion passes only within its runtime budget.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            std::ostream* log = nullptr);

std::string format_result_line(const CriterionResult& result);

Json acceptance_report(const std::vector<CriterionResult>& results);

}  // namespace rmt
