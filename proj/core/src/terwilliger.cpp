#include "twa/terwilliger.hpp"

#include <algorithm>
#include <stdexcept>

namespace twa {

namespace {

bool is_quasi_thin(const IntersectionTensor& t) {
  for (int a = 0; a <= t.d; ++a)
    if (t.valency(a) > 2) return false;
  return true;
}

}  // namespace

std::vector<int> relations_of_valency(const IntersectionTensor& t, long long k) {
  std::vector<int> out;
  for (int a = 0; a <= t.d; ++a)
    if (t.valency(a) == k) out.push_back(a);
  return out;
}

std::vector<std::pair<int, int>> two_product_pairs(const IntersectionTensor& t) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a <= t.d; ++a)
    for (int b = 0; b <= t.d; ++b)
      if (complex_product(t, t.star(a), b).size() == 2) out.emplace_back(a, b);
  return out;
}

std::vector<std::pair<int, int>> r_pairs(const IntersectionTensor& t) {
  std::vector<std::pair<int, int>> out;
  for (int g = 0; g <= t.d; ++g) {
    if (t.valency(g) != 2) continue;
    for (int h = 0; h <= t.d; ++h) {
      if (t.valency(h) != 2) continue;
      if (complex_product(t, t.star(g), h).size() == 2) out.emplace_back(g, h);
    }
  }
  return out;
}

BadPairAnalysis bad_pair_analysis(const IntersectionTensor& t) {
  const int m = t.d + 1;
  const std::vector<int> a2 = relations_of_valency(t, 2);

  // A chain of triples (i_b, j_b, l_b) with l_c = i_{c+1} is a walk in the
  // digraph on the valency-2 relations with an edge u -> w whenever some
  // middle relation j gives p_{uj}^w = 1.  A pair (u,v) is bad when a walk
  // of at least two edges joins u to v and |R_{u'} R_v| = 1.
  auto compute = [&](bool middle_valency_two) {
    std::vector<std::vector<bool>> edge(m, std::vector<bool>(m, false));
    for (int u : a2)
      for (int w : a2)
        for (int j = 0; j < m; ++j) {
          if (middle_valency_two && t.valency(j) != 2) continue;
          if (t.at(u, j, w) == 1) {
            edge[u][w] = true;
            break;
          }
        }

    auto reach = edge;  // paths of length >= 1
    for (int k : a2)
      for (int u : a2)
        if (reach[u][k])
          for (int v : a2)
            if (reach[k][v]) reach[u][v] = true;

    std::vector<std::pair<int, int>> bad;
    for (int u : a2)
      for (int v : a2) {
        bool walk2 = false;
        for (int w : a2)
          if (edge[u][w] && reach[w][v]) {
            walk2 = true;
            break;
          }
        if (!walk2) continue;
        if (complex_product(t, t.star(u), v).size() == 1) bad.emplace_back(u, v);
      }
    return bad;  // lexicographic: a2 ascends
  };

  BadPairAnalysis out;
  out.literal = compute(false);
  out.restricted = compute(true);
  out.readings_differ = out.literal != out.restricted;
  return out;
}

std::vector<std::pair<int, int>> bad_pairs(const IntersectionTensor& t) {
  auto analysis = bad_pair_analysis(t);
  if (is_quasi_thin(t)) {
    // For quasi-thin schemes the set of bad pairs is empty exactly when no
    // 5-tuple witness exists; check the two independent computations agree.
    if (analysis.literal.empty() == five_tuple_witness(t).has_value())
      throw std::logic_error("bad_pairs: chain computation disagrees with the 5-tuple criterion");
  }
  return analysis.literal;
}

std::optional<std::array<int, 5>> five_tuple_witness(const IntersectionTensor& t) {
  const std::vector<int> a2 = relations_of_valency(t, 2);
  for (int u : a2) {
    for (int v : a2)
      for (int w : a2) {
        if (t.at(u, v, w) != 1) continue;
        for (int y : a2)
          for (int z : a2) {
            if (t.at(w, y, z) != 1) continue;
            if (complex_product(t, t.star(u), z).size() == 1)
              return std::array<int, 5>{u, v, w, y, z};
          }
      }
  }
  return std::nullopt;
}

TriplyRegular triply_regular_quasithin(const IntersectionTensor& t) {
  if (!is_quasi_thin(t))
    throw std::invalid_argument("triply_regular_quasithin: scheme is not quasi-thin");
  TriplyRegular out;
  out.witness = five_tuple_witness(t);
  out.triply_regular = !out.witness.has_value();
  if (out.triply_regular != bad_pairs(t).empty())
    throw std::logic_error("triply_regular_quasithin: verdict disagrees with the bad-pair set");
  return out;
}

long long quasithin_dimension_formula(const IntersectionTensor& t) {
  if (!is_quasi_thin(t))
    throw std::invalid_argument("quasithin_dimension_formula: scheme is not quasi-thin");
  const long long m = t.d + 1;
  return m * m + static_cast<long long>(two_product_pairs(t).size()) +
         static_cast<long long>(bad_pairs(t).size());
}

std::vector<std::vector<int>> equivalence_classes(const IntersectionTensor& t) {
  if (!is_quasi_thin(t))
    throw std::invalid_argument("equivalence_classes: scheme is not quasi-thin");
  const std::vector<int> a2 = relations_of_valency(t, 2);
  if (a2.empty()) throw std::invalid_argument("equivalence_classes: no valency-2 relations");

  auto u_set = r_pairs(t);
  const auto bad = bad_pairs(t);
  u_set.insert(u_set.end(), bad.begin(), bad.end());
  std::sort(u_set.begin(), u_set.end());
  if (std::adjacent_find(u_set.begin(), u_set.end()) != u_set.end())
    throw std::logic_error("equivalence_classes: a pair is counted both with product size 2 and as bad");

  auto related = [&](int b, int c) {
    return std::binary_search(u_set.begin(), u_set.end(), std::make_pair(b, c));
  };

  for (int b : a2)
    if (!related(b, b)) throw std::logic_error("equivalence_classes: relation is not reflexive");
  for (int b : a2)
    for (int c : a2) {
      if (related(b, c) != related(c, b))
        throw std::logic_error("equivalence_classes: relation is not symmetric");
      if (!related(b, c)) continue;
      for (int e : a2)
        if (related(c, e) && !related(b, e))
          throw std::logic_error("equivalence_classes: relation is not transitive");
    }

  std::vector<std::vector<int>> classes;
  std::vector<bool> done(t.d + 1, false);
  for (int b : a2) {
    if (done[b]) continue;
    std::vector<int> cls;
    for (int c : a2)
      if (related(b, c)) {
        cls.push_back(c);
        done[c] = true;
      }
    classes.push_back(std::move(cls));
  }
  return classes;
}

}  // namespace twa
