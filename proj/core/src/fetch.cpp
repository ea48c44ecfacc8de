#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "twa/fetch.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <httplib.h>
#include <json.hpp>
#include <openssl/evp.h>

#include "twa/scheme.hpp"

namespace twa {

namespace fs = std::filesystem;
using nlohmann::json;

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("sha256: digest computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

namespace {

std::string sanitize_for_filename(const std::string& id) {
  std::string out;
  for (char c : id)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '-') ? c : '-';
  return out;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Splits a document into maximal runs of non-blank lines.
std::vector<std::string> blank_line_chunks(const std::string& body) {
  std::vector<std::string> chunks;
  std::string current;
  std::istringstream in(body);
  std::string line;
  auto flush = [&]() {
    if (!current.empty()) chunks.push_back(std::move(current));
    current.clear();
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) {
      flush();
    } else {
      current += line;
      current += '\n';
    }
  }
  flush();
  return chunks;
}

}  // namespace

FetchResult fetch_corpus(const std::string& list_id, const FetchOptions& opts) {
  if (list_id.empty()) throw std::runtime_error("fetch: empty list id");

  std::string base = opts.base_url;
  if (base.empty()) {
    if (const char* env = std::getenv("TWA_CORPUS_BASE_URL")) base = env;
  }
  if (base.empty())
    throw std::runtime_error("fetch: no base URL (pass --base-url or set TWA_CORPUS_BASE_URL)");

  const auto scheme_pos = base.find("://");
  if (scheme_pos == std::string::npos)
    throw std::runtime_error("fetch: base URL must start with http:// or https://");
  const auto path_pos = base.find('/', scheme_pos + 3);
  std::string host = path_pos == std::string::npos ? base : base.substr(0, path_pos);
  std::string prefix = path_pos == std::string::npos ? "" : base.substr(path_pos);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();

  httplib::Client client(host);
  client.set_connection_timeout(10, 0);
  client.set_read_timeout(60, 0);
  client.set_follow_location(true);

  const std::string target = prefix + "/" + list_id;
  auto res = client.Get(target);
  if (!res)
    throw std::runtime_error("fetch: request to " + host + target +
                             " failed: " + httplib::to_string(res.error()));
  if (res->status != 200)
    throw std::runtime_error("fetch: " + host + target + " returned HTTP " +
                             std::to_string(res->status));

  // Parse and re-serialise everything before touching the filesystem.
  const auto chunks = blank_line_chunks(res->body);
  if (chunks.empty()) throw std::runtime_error("fetch: the fetched document contains no matrices");

  const std::string stem = sanitize_for_filename(list_id);
  std::vector<std::pair<std::string, std::string>> contents;  // (filename, bytes)
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    Scheme s;
    try {
      s = parse_scheme_matrix(chunks[i]);
    } catch (const std::exception& e) {
      throw std::runtime_error("fetch: matrix " + std::to_string(i + 1) + " of " + list_id +
                               " is malformed: " + e.what());
    }
    char num[32];
    std::snprintf(num, sizeof num, "%03zu", i + 1);
    contents.emplace_back(stem + "-" + num + ".scheme", serialize(s));
  }

  const fs::path dir = opts.out_dir.empty() ? fs::path(".") : fs::path(opts.out_dir);
  fs::create_directories(dir);
  const fs::path manifest_path = dir / "manifest.json";

  // Load the existing manifest (if any) and verify its digests against the
  // files on disk before writing anything.
  struct Entry {
    std::string digest, identifier, source;
  };
  std::map<std::string, Entry> entries;  // keyed by relative path
  if (fs::exists(manifest_path)) {
    json manifest = json::parse(read_file(manifest_path), nullptr, false);
    if (manifest.is_discarded() || manifest.value("schema", "") != "twa-manifest-v1")
      throw std::runtime_error("fetch: existing manifest is not a twa-manifest-v1 document");
    for (const auto& e : manifest.at("entries")) {
      const auto path = e.at("path").get<std::string>();
      entries[path] = Entry{e.at("digest").get<std::string>(), e.at("identifier").get<std::string>(),
                            e.at("source").get<std::string>()};
      const fs::path p = dir / path;
      if (fs::exists(p) && sha256_hex(read_file(p)) != entries[path].digest)
        throw std::runtime_error("fetch: digest mismatch for " + path +
                                 ": the local file differs from the manifest");
    }
  }

  // Detect conflicts with existing files before writing anything.
  FetchResult result;
  result.list_id = list_id;
  result.count = static_cast<int>(contents.size());
  std::vector<std::size_t> to_write;
  for (std::size_t i = 0; i < contents.size(); ++i) {
    const auto& [name, bytes] = contents[i];
    const fs::path p = dir / name;
    if (fs::exists(p)) {
      if (read_file(p) != bytes)
        throw std::runtime_error("fetch: " + name +
                                 " already exists with different content (digest mismatch); "
                                 "remove it to re-fetch");
      ++result.unchanged;
    } else {
      to_write.push_back(i);
    }
    result.files.push_back(name);
  }

  for (std::size_t i : to_write) {
    const auto& [name, bytes] = contents[i];
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("fetch: cannot write " + (dir / name).string());
    out << bytes;
    if (!out) throw std::runtime_error("fetch: short write on " + (dir / name).string());
    ++result.written;
  }

  const std::string source = host + target;
  for (const auto& [name, bytes] : contents) {
    entries[name] = Entry{sha256_hex(bytes), fs::path(name).stem().string(), source};
  }
  json out_entries = json::array();
  for (const auto& [path, e] : entries) {
    json ej;
    ej["digest"] = e.digest;
    ej["identifier"] = e.identifier;
    ej["path"] = path;
    ej["source"] = e.source;
    out_entries.push_back(std::move(ej));
  }
  json manifest;
  manifest["entries"] = std::move(out_entries);
  manifest["schema"] = "twa-manifest-v1";
  std::ofstream mout(manifest_path, std::ios::binary);
  if (!mout) throw std::runtime_error("fetch: cannot write " + manifest_path.string());
  mout << manifest.dump(2) << "\n";
  result.manifest_path = manifest_path.string();
  return result;
}

}  // namespace twa
