#include "twa/scheme.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "twa/field.hpp"  // is_prime

namespace twa {
namespace {

// Data lines of the canonical format: '#' lines and blank lines dropped.
std::vector<std::string_view> data_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    if (line[first] == '#') continue;
    out.push_back(line);
  }
  return out;
}

std::vector<long long> tokens_of(std::string_view line, int lineno) {
  std::vector<long long> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    long long value = 0;
    auto res = std::from_chars(line.data() + i, line.data() + j, value);
    if (res.ec != std::errc() || res.ptr != line.data() + j)
      throw ParseError("line " + std::to_string(lineno) + ": '" + std::string(line.substr(i, j - i)) +
                       "' is not an integer");
    out.push_back(value);
    i = j;
  }
  return out;
}

Scheme from_rows(const std::vector<std::vector<long long>>& rows, int n, int d) {
  if (n <= 0) throw ParseError("scheme must have at least one vertex");
  if (d < 0) throw ParseError("scheme must have at least one relation");
  if (static_cast<long long>(d) + 1 > static_cast<long long>(n) * n)
    throw ParseError("d+1 = " + std::to_string(d + 1) + " relation labels cannot all be non-empty on " +
                     std::to_string(n) + " vertices");
  Scheme s;
  s.n = n;
  s.d = d;
  s.rel.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw ParseError("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                       " entries, expected " + std::to_string(n));
    for (int j = 0; j < n; ++j) {
      long long v = rows[i][j];
      if (v < 0 || v > d)
        throw ParseError("entry rel(" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                         std::to_string(v) + " outside [0, " + std::to_string(d) + "]");
      s.rel.push_back(static_cast<int>(v));
    }
  }
  return s;
}

}  // namespace

Scheme parse_scheme(std::string_view text) {
  auto lines = data_lines(text);
  if (lines.empty()) throw ParseError("no data lines");
  auto header = tokens_of(lines[0], 1);
  if (header.size() != 2) throw ParseError("header must be 'n d'");
  long long n = header[0], d = header[1];
  if (n <= 0 || n > 100000) throw ParseError("bad vertex count n = " + std::to_string(n));
  if (d < 0) throw ParseError("bad relation count d = " + std::to_string(d));
  if (static_cast<long long>(lines.size()) - 1 != n)
    throw ParseError("expected " + std::to_string(n) + " matrix rows, found " +
                     std::to_string(lines.size() - 1));
  std::vector<std::vector<long long>> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) rows.push_back(tokens_of(lines[i], static_cast<int>(i + 1)));
  return from_rows(rows, static_cast<int>(n), static_cast<int>(d));
}

Scheme parse_scheme_matrix(std::string_view text) {
  auto lines = data_lines(text);
  if (lines.empty()) throw ParseError("no data lines");
  std::vector<std::vector<long long>> rows;
  for (std::size_t i = 0; i < lines.size(); ++i) rows.push_back(tokens_of(lines[i], static_cast<int>(i + 1)));
  const int n = static_cast<int>(rows[0].size());
  if (static_cast<int>(rows.size()) != n)
    throw ParseError("matrix is " + std::to_string(rows.size()) + " rows by " + std::to_string(n) +
                     " columns, expected square");
  long long d = 0;
  for (const auto& r : rows)
    for (long long v : r) d = std::max(d, v);
  return from_rows(rows, n, static_cast<int>(d));
}

std::string serialize(const Scheme& s) {
  std::ostringstream os;
  os << s.n << ' ' << s.d << '\n';
  for (int i = 0; i < s.n; ++i) {
    for (int j = 0; j < s.n; ++j) {
      if (j) os << ' ';
      os << s.at(i, j);
    }
    os << '\n';
  }
  return os.str();
}

std::string ValidationReport::summary() const {
  if (violations.empty()) return "valid";
  std::string s;
  for (const auto& v : violations) {
    if (!s.empty()) s += "; ";
    s += v.message;
  }
  return s;
}

ValidationReport validate(const Scheme& s) {
  ValidationReport report;
  auto add = [&](std::string axiom, std::string message) {
    report.violations.push_back({std::move(axiom), std::move(message)});
  };

  if (s.n <= 0 || s.d < 0 || s.rel.size() != static_cast<std::size_t>(s.n) * s.n) {
    add("shape", "relation matrix shape does not match n = " + std::to_string(s.n));
    return report;
  }
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.n; ++j)
      if (s.at(i, j) < 0 || s.at(i, j) > s.d) {
        add("labels", "entry rel(" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                          std::to_string(s.at(i, j)) + " outside [0, " + std::to_string(s.d) + "]");
        return report;
      }

  // Axiom (i): R_0 is exactly the diagonal.
  for (int i = 0; i < s.n && report.violations.size() < 8; ++i) {
    if (s.at(i, i) != 0)
      add("R_0 not diagonal", "R_0 not diagonal: rel(" + std::to_string(i) + "," + std::to_string(i) +
                                  ") = " + std::to_string(s.at(i, i)));
    for (int j = 0; j < s.n; ++j)
      if (i != j && s.at(i, j) == 0) {
        add("R_0 not diagonal", "R_0 not diagonal: rel(" + std::to_string(i) + "," + std::to_string(j) +
                                    ") = 0 off the diagonal");
        break;
      }
  }

  // Every label in [0, d] must be used (relations are non-empty).
  std::vector<char> seen(static_cast<std::size_t>(s.d) + 1, 0);
  for (int v : s.rel) seen[v] = 1;
  for (int a = 0; a <= s.d; ++a)
    if (!seen[a]) add("labels", "relation R_" + std::to_string(a) + " is empty");
  if (!report.ok()) return report;

  // Axiom (ii): the transpose of R_a is a single relation R_{a'}.
  std::vector<int> dual(static_cast<std::size_t>(s.d) + 1, -1);
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.n; ++j) {
      const int a = s.at(i, j), b = s.at(j, i);
      if (dual[a] == -1) {
        dual[a] = b;
      } else if (dual[a] != b) {
        add("transpose", "transpose of R_" + std::to_string(a) + " is not a single relation: rel(" +
                             std::to_string(j) + "," + std::to_string(i) + ") = " + std::to_string(b) +
                             " but an earlier pair gave " + std::to_string(dual[a]));
        return report;
      }
    }
  for (int a = 0; a <= s.d; ++a)
    if (dual[dual[a]] != a) {
      add("transpose", "transpose map is not an involution at R_" + std::to_string(a));
      return report;
    }

  // Axiom (iii): regularity, checked for every pair of vertices against the
  // representative counts of its relation.
  const int m = s.d + 1;
  std::vector<std::vector<long long>> ref(m);  // per relation w: counts over (u,v)
  std::vector<long long> counts(static_cast<std::size_t>(m) * m);
  for (int g = 0; g < s.n; ++g) {
    for (int h = 0; h < s.n; ++h) {
      std::fill(counts.begin(), counts.end(), 0);
      for (int r = 0; r < s.n; ++r) ++counts[static_cast<std::size_t>(s.at(g, r)) * m + s.at(r, h)];
      const int w = s.at(g, h);
      if (ref[w].empty()) {
        ref[w] = counts;
      } else if (ref[w] != counts) {
        for (int u = 0; u < m; ++u)
          for (int v = 0; v < m; ++v)
            if (ref[w][static_cast<std::size_t>(u) * m + v] != counts[static_cast<std::size_t>(u) * m + v]) {
              add("regularity",
                  "regularity fails for (u,v) = (" + std::to_string(u) + "," + std::to_string(v) +
                      ") on R_" + std::to_string(w) + ": pair (" + std::to_string(g) + "," +
                      std::to_string(h) + ") has count " +
                      std::to_string(counts[static_cast<std::size_t>(u) * m + v]) + ", expected " +
                      std::to_string(ref[w][static_cast<std::size_t>(u) * m + v]));
              return report;
            }
      }
    }
  }
  return report;
}

IntersectionTensor intersection_tensor(const Scheme& s) {
  auto report = validate(s);
  if (!report.ok()) throw std::invalid_argument("scheme fails validation: " + report.summary());

  IntersectionTensor t;
  t.n = s.n;
  t.d = s.d;
  const int m = s.d + 1;
  t.p.assign(static_cast<std::size_t>(m) * m * m, 0);
  t.k.assign(m, 0);
  t.dual.assign(m, 0);

  std::vector<std::pair<int, int>> rep(m, {-1, -1});
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.n; ++j) {
      const int w = s.at(i, j);
      if (rep[w].first == -1) rep[w] = {i, j};
    }

  for (int w = 0; w < m; ++w) {
    const auto [g, h] = rep[w];
    t.dual[w] = s.at(h, g);
    for (int r = 0; r < s.n; ++r)
      ++t.p[(static_cast<std::size_t>(s.at(g, r)) * m + s.at(r, h)) * m + w];
  }
  for (int a = 0; a < m; ++a) {
    long long k = 0;
    for (int j = 0; j < s.n; ++j)
      if (s.at(0, j) == a) ++k;
    t.k[a] = k;
  }
  return t;
}

std::vector<int> complex_product(const IntersectionTensor& t, int a, int b) {
  if (a < 0 || a > t.d || b < 0 || b > t.d) throw std::out_of_range("complex_product: relation index");
  std::vector<int> out;
  for (int z = 0; z <= t.d; ++z)
    if (t.at(a, b, z) > 0) out.push_back(z);
  return out;
}

long long count_nonzero_intersections(const IntersectionTensor& t) {
  long long c = 0;
  for (long long v : t.p)
    if (v > 0) ++c;
  return c;
}

Classification classify(const IntersectionTensor& t, std::uint64_t characteristic) {
  if (characteristic != 0 && !is_prime(characteristic))
    throw std::invalid_argument("characteristic must be 0 or a prime, got " + std::to_string(characteristic));
  Classification c;
  c.characteristic = characteristic;
  c.thin = true;
  c.quasi_thin = true;
  c.p_prime_valenced = true;
  for (int a = 0; a <= t.d; ++a) {
    if (t.k[a] != 1) c.thin = false;
    if (t.k[a] > 2) c.quasi_thin = false;
    if (characteristic != 0 && t.k[a] % static_cast<long long>(characteristic) == 0)
      c.p_prime_valenced = false;
  }
  return c;
}

}  // namespace twa
