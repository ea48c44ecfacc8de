#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twa/scheme.hpp"

namespace twa {

struct VerifyOptions {
  std::vector<std::uint64_t> characteristics{0, 2, 3};
  int vertex = 0;
  bool all_vertices = false;  ///< also check vertex independence (all base vertices)
  bool with_timings = false;  ///< include timings when the report is serialised
};

/// One checked claim: "pass", "fail", or "skipped" (detail holds the witness
/// or the reason).
struct Verdict {
  std::string status = "skipped";
  std::string detail;

  bool failed() const { return status == "fail"; }
  bool operator==(const Verdict&) const = default;
};

struct BlockInfo {
  std::string label;
  int size = 0;
  bool operator==(const BlockInfo&) const = default;
};

/// Results of the pipeline over one field.
struct CharacteristicResult {
  std::uint64_t characteristic = 0;
  long long closure_dim = -1;   ///< dim of the generated algebra (always computed)
  long long formula_dim = -1;   ///< combinatorial dimension; -1 when not applicable
  Verdict dimension;            ///< formula equals closure
  long long radical_dim = -1;
  std::optional<int> nilpotency;
  std::vector<BlockInfo> blocks;
  Verdict decomposition;        ///< certified radical + blocks + expected (semi)simplicity
  Verdict vertex_independence;  ///< identical structure constants at every vertex
  double elapsed_ms = 0.0;

  bool failed() const {
    return dimension.failed() || decomposition.failed() || vertex_independence.failed();
  }
};

struct VerificationReport {
  std::string identifier;
  int n = 0;
  int d = 0;
  std::vector<long long> valencies;                         ///< k_0..k_d
  std::vector<std::pair<long long, long long>> valency_histogram;  ///< (valency, count)
  bool valid = false;
  std::string validation_summary;  ///< empty when valid
  bool thin = false;
  bool quasi_thin = false;
  std::vector<std::pair<int, int>> r_set;  ///< pairs with |R_{a'}R_b| = 2 (quasi-thin)
  std::vector<std::pair<int, int>> s_set;  ///< bad pairs (quasi-thin)
  bool readings_differ = false;            ///< bad-pair definition readings disagree
  std::optional<bool> triply_regular;
  std::optional<std::array<int, 5>> witness;  ///< 5-tuple when not triply regular
  int base_vertex = 0;
  std::vector<CharacteristicResult> results;

  bool all_pass() const {
    if (!valid) return false;
    for (const auto& r : results)
      if (r.failed()) return false;
    return true;
  }
};

/// Runs validation, classification, and per-characteristic checks of the
/// structure theorems.  Never throws on mathematical failure: failures are
/// recorded as "fail" verdicts.  Throws std::invalid_argument for unusable
/// options (non-prime nonzero characteristic, vertex out of range).
VerificationReport verify_scheme(const Scheme& s, const std::string& identifier,
                                 const VerifyOptions& opts = {});

}  // namespace twa
