#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "twa/scheme.hpp"

namespace twa_test {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::string data_path(const std::string& name) {
  return std::string(TWA_DATA_DIR) + "/" + name;
}

inline twa::Scheme load_scheme(const std::string& name) {
  return twa::parse_scheme(read_file(data_path(name)));
}

// Independent model constructions (group arithmetic, not file parsing).

inline twa::Scheme make_thin_cyclic(int n) {
  twa::Scheme s;
  s.n = n;
  s.d = n - 1;
  s.rel.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.rel[static_cast<std::size_t>(i) * n + j] = ((j - i) % n + n) % n;
  return s;
}

// Fusion of thin C6 by difference classes {0}, {3}, {1,5}, {2,4}.
inline twa::Scheme make_c6_fusion() {
  const int cls[6] = {0, 2, 3, 1, 3, 2};
  twa::Scheme s;
  s.n = 6;
  s.d = 3;
  s.rel.resize(36);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) s.rel[static_cast<std::size_t>(i) * 6 + j] = cls[((j - i) % 6 + 6) % 6];
  return s;
}

inline twa::Scheme make_wreath_c2_c2() {
  twa::Scheme s;
  s.n = 4;
  s.d = 2;
  s.rel = {0, 1, 2, 2,
           1, 0, 2, 2,
           2, 2, 0, 1,
           2, 2, 1, 0};
  return s;
}

// Complete scheme on 4 points: one non-identity relation of valency 3.
inline twa::Scheme make_k4() {
  twa::Scheme s;
  s.n = 4;
  s.d = 1;
  s.rel = {0, 1, 1, 1,
           1, 0, 1, 1,
           1, 1, 0, 1,
           1, 1, 1, 0};
  return s;
}

// Symmetric relation partition of K4 that is not regular: R_1 = {(0,1),(1,0)}.
inline twa::Scheme make_irregular() {
  twa::Scheme s;
  s.n = 4;
  s.d = 2;
  s.rel = {0, 1, 2, 2,
           1, 0, 2, 2,
           2, 2, 0, 2,
           2, 2, 2, 0};
  return s;
}

// Counting oracle: |{r : (g,r) in R_u, (r,h) in R_v}| checked over every
// (g,h) in R_w; returns the common count or nullopt if it is not constant.
inline std::optional<long long> brute_intersection_number(const twa::Scheme& s, int u, int v, int w) {
  std::optional<long long> common;
  for (int g = 0; g < s.n; ++g)
    for (int h = 0; h < s.n; ++h) {
      if (s.at(g, h) != w) continue;
      long long c = 0;
      for (int r = 0; r < s.n; ++r)
        if (s.at(g, r) == u && s.at(r, h) == v) ++c;
      if (!common) common = c;
      else if (*common != c) return std::nullopt;
    }
  return common;
}

}  // namespace twa_test
