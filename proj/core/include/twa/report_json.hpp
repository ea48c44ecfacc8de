#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "twa/batch.hpp"
#include "twa/verify.hpp"

namespace twa {

/// Canonical JSON document, schema "twa-report-v1": keys alphabetical,
/// two-space indentation, trailing newline.  Serialising the same report
/// always yields identical bytes; timings enter only when with_timings is
/// set.
std::string report_to_json(const VerificationReport& rep, bool with_timings = false);

/// Inverse of report_to_json (timings read back when present).  Throws
/// std::invalid_argument on malformed input or schema mismatch.
VerificationReport report_from_json(std::string_view json_text);

/// Canonical JSON document, schema "twa-batch-v1": summary counters plus one
/// entry per file.
std::string batch_to_json(const BatchReport& batch, bool with_timings = false);

BatchReport batch_from_json(std::string_view json_text);

/// One CSV row per scheme and characteristic (no timings).  An invalid or
/// unloadable scheme contributes a single row with an empty characteristic
/// column.
std::string reports_to_csv(const std::vector<VerificationReport>& reports);
std::string batch_to_csv(const BatchReport& batch);

/// Human-readable multi-line rendering for terminal output.
std::string report_to_text(const VerificationReport& rep, bool with_timings = false);
std::string batch_to_text(const BatchReport& batch);

}  // namespace twa
