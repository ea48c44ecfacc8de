#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace twa {

/// Hex-encoded SHA-256 of a byte string.
std::string sha256_hex(std::string_view data);

struct FetchOptions {
  std::string base_url;  ///< falls back to the TWA_CORPUS_BASE_URL environment variable
  std::string out_dir = ".";
};

struct FetchResult {
  std::string list_id;
  int count = 0;      ///< schemes in the fetched list
  int written = 0;    ///< files newly written
  int unchanged = 0;  ///< files already present with a matching digest
  std::vector<std::string> files;  ///< canonical filenames, in list order
  std::string manifest_path;
};

/// Downloads {base_url}/{list_id} — a text document of blank-line-separated
/// headerless relation matrices — converts each matrix to the canonical file
/// format as {list_id}-NNN.scheme in out_dir, and records SHA-256 digests in
/// manifest.json (schema "twa-manifest-v1", merged with existing entries).
///
/// The operation is idempotent: files whose digest already matches are left
/// untouched.  A local file whose content differs from the fetched one is an
/// error.  All downloading and parsing happens before anything is written, so
/// a network or format failure leaves the directory and manifest unchanged.
FetchResult fetch_corpus(const std::string& list_id, const FetchOptions& opts);

}  // namespace twa
