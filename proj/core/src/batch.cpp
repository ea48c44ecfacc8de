#include "twa/batch.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace twa {

namespace fs = std::filesystem;

BatchReport run_batch(const std::string& directory, const VerifyOptions& opts, int jobs) {
  std::error_code ec;
  if (!fs::is_directory(directory, ec))
    throw std::runtime_error("run_batch: not a readable directory: " + directory);

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".scheme")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

  BatchReport batch;
  batch.total = static_cast<int>(files.size());
  batch.entries.resize(files.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next.fetch_add(1); i < files.size(); i = next.fetch_add(1)) {
      BatchEntry& out = batch.entries[i];
      out.identifier = files[i].stem().string();
      try {
        std::ifstream in(files[i]);
        if (!in) throw std::runtime_error("cannot open file");
        std::ostringstream buf;
        buf << in.rdbuf();
        const Scheme s = parse_scheme(buf.str());
        out.report = verify_scheme(s, out.identifier, opts);
        out.loaded = true;
      } catch (const std::exception& e) {
        out.loaded = false;
        out.error = e.what();
        out.report.reset();
      }
    }
  };

  const int nthreads = std::max(1, std::min<int>(jobs, static_cast<int>(files.size())));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (const auto& e : batch.entries) {
    if (!e.loaded) {
      ++batch.load_failures;
    } else {
      ++batch.loaded;
      (e.report->all_pass() ? batch.passed : batch.failed)++;
    }
  }
  return batch;
}

}  // namespace twa
