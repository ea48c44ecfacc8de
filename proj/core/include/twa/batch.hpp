#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twa/verify.hpp"

namespace twa {

/// Outcome for one *.scheme file in a batch run.
struct BatchEntry {
  std::string identifier;  ///< file stem
  bool loaded = false;
  std::string error;  ///< read/parse error when !loaded
  std::optional<VerificationReport> report;
};

struct BatchReport {
  std::vector<BatchEntry> entries;  ///< sorted by identifier
  int total = 0;
  int loaded = 0;
  int load_failures = 0;
  int passed = 0;  ///< loaded and report.all_pass()
  int failed = 0;  ///< loaded but some check failed (or scheme invalid)

  bool all_pass() const { return load_failures == 0 && failed == 0; }
};

/// Verifies every *.scheme file in the directory (sorted by filename) with a
/// bounded worker pool.  Unreadable or unparsable files become failed entries
/// without aborting the run.  The result is deterministic: independent of the
/// job count and of directory iteration order.  Throws std::runtime_error
/// when the directory cannot be read.
BatchReport run_batch(const std::string& directory, const VerifyOptions& opts, int jobs = 1);

}  // namespace twa
