#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// End-to-end checks of every quantitative claim the library can test. Shared
// by the acceptance test binary and `rfe verify`.

namespace rfe {

struct CriterionResult {
  std::string id;
  std::string title;
  bool passed = false;
  bool report_only = false;  // shown, never fails a suite
  std::string detail;
  double seconds = 0.0;
};

struct CheckOptions {
  int workers = 0;
  std::uint64_t master_seed = 20230401;
  // When non-empty, the spectrum snapshot writes its spectrum CSV here.
  std::string snapshot_csv_path;
};

CriterionResult check_oracle_equivalence(const CheckOptions& options);
CriterionResult check_kernel_bounds(const CheckOptions& options);
CriterionResult check_noiseless_guarantee(const CheckOptions& options);
CriterionResult check_ban_guarantee(const CheckOptions& options);
CriterionResult check_gaussian(const CheckOptions& options);
CriterionResult check_thresholds(const CheckOptions& options);
CriterionResult check_depth(const CheckOptions& options);
CriterionResult check_reductions(const CheckOptions& options);
CriterionResult report_spectrum_snapshot(const CheckOptions& options);
CriterionResult report_derivations(const CheckOptions& options);

// oracle, lemmas, noiseless, ban, gaussian, thresholds, depth,
// reductions, snapshot, reports, all.
std::vector<std::string> suite_names();
std::vector<CriterionResult> run_suite(std::string_view name,
                                       const CheckOptions& options);

// True when no non-report criterion failed.
bool all_passed(const std::vector<CriterionResult>& results);

// "[PASS] C3 title (1.23 s): detail"
std::string format_line(const CriterionResult& result);

}  // namespace rfe
