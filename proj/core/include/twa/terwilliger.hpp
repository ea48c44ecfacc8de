#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twa/algebra.hpp"
#include "twa/closure.hpp"
#include "twa/matrix.hpp"
#include "twa/scheme.hpp"

namespace twa {

// ---------------------------------------------------------------------------
// Combinatorial layer (field-independent, defined on the intersection tensor)
// ---------------------------------------------------------------------------

/// Relations of the given valency, ascending.
std::vector<int> relations_of_valency(const IntersectionTensor& t, long long k);

/// Pairs (a,b) with |R_{a'} R_b| = 2, lexicographic.
std::vector<std::pair<int, int>> two_product_pairs(const IntersectionTensor& t);

/// The set R: pairs (g,h) of valency-2 relations with |R_{g'} R_h| = 2.
std::vector<std::pair<int, int>> r_pairs(const IntersectionTensor& t);

struct BadPairAnalysis {
  std::vector<std::pair<int, int>> literal;     ///< middle relations unrestricted
  std::vector<std::pair<int, int>> restricted;  ///< middle relations also of valency 2
  bool readings_differ = false;
};

/// Bad pairs under both readings of the chain definition.  A pair (i_0, l_a)
/// is bad when a chain of at least two triples (i_b, j_b, l_b) links i_0 to
/// l_a with k_{i_b} = k_{l_b} = 2, p_{i_b j_b}^{l_b} = 1, consecutive triples
/// sharing l_c = i_{c+1}, and |R_{i_0'} R_{l_a}| = 1.  The literal reading
/// puts no valency constraint on the middle relations R_{j_b}; the restricted
/// reading demands valency 2 there as well.
BadPairAnalysis bad_pair_analysis(const IntersectionTensor& t);

/// Bad pairs (literal reading), lexicographic.  For quasi-thin schemes the
/// emptiness of the result is cross-checked against the 5-tuple criterion.
std::vector<std::pair<int, int>> bad_pairs(const IntersectionTensor& t);

/// Lexicographically smallest (u,v,w,y,z), all of valency 2, with
/// p_{uv}^w = p_{wy}^z = |R_{u'} R_z| = 1; nullopt if none exists.
std::optional<std::array<int, 5>> five_tuple_witness(const IntersectionTensor& t);

struct TriplyRegular {
  bool triply_regular = false;
  std::optional<std::array<int, 5>> witness;
};

/// Triple regularity criterion for quasi-thin schemes: regular iff no
/// 5-tuple witness exists (equivalently, no bad pairs).
TriplyRegular triply_regular_quasithin(const IntersectionTensor& t);

/// dim T = (d+1)^2 + #{(a,b) : |R_{a'} R_b| = 2} + #bad pairs, for
/// quasi-thin schemes at every vertex and characteristic.
long long quasithin_dimension_formula(const IntersectionTensor& t);

/// Partition of the valency-2 relations under b ~ c iff (b,c) in R cup S.
/// The relation axioms are asserted before partitioning.  Classes are
/// ordered by smallest member.  Requires at least one valency-2 relation.
std::vector<std::vector<int>> equivalence_classes(const IntersectionTensor& t);

// ---------------------------------------------------------------------------
// Matrix layer
// ---------------------------------------------------------------------------

/// Adjacency matrices and dual idempotents of a scheme at a base vertex.
template <class F>
struct TerwilligerContext {
  F field;
  Scheme scheme;
  IntersectionTensor tensor;
  int x = 0;                             ///< base vertex
  std::vector<std::vector<int>> fibers;  ///< fibers[i] = xR_i, ascending
  std::vector<Mat<F>> A;                 ///< adjacency matrices A_0..A_d
  std::vector<Mat<F>> E;                 ///< dual idempotents E_0*..E_d*
};

/// Builds the context and eagerly verifies the defining identities:
/// A_0 = I, A_b^T = A_{b'}, sum A = J, E_z* E_j* = delta E_z*, sum E = I,
/// and J E_z* J = k_z J.
template <class F>
TerwilligerContext<F> build_context(const F& field, const Scheme& s, int x) {
  TerwilligerContext<F> ctx{field, s, intersection_tensor(s), x, {}, {}, {}};
  if (x < 0 || x >= s.n) throw std::out_of_range("build_context: vertex out of range");

  const int n = s.n, d = s.d;
  ctx.fibers.resize(d + 1);
  for (int h = 0; h < n; ++h) ctx.fibers[s.at(x, h)].push_back(h);

  for (int i = 0; i <= d; ++i) {
    Mat<F> a(field, n, n);
    for (int g = 0; g < n; ++g)
      for (int h = 0; h < n; ++h)
        if (s.at(g, h) == i) a.at(g, h) = field.one();
    ctx.A.push_back(std::move(a));

    Mat<F> e(field, n, n);
    for (int h : ctx.fibers[i]) e.at(h, h) = field.one();
    ctx.E.push_back(std::move(e));
  }

  const Mat<F> I = Mat<F>::identity(field, n);
  const Mat<F> J = Mat<F>::ones(field, n, n);
  if (ctx.A[0] != I) throw std::logic_error("context: A_0 != I");
  Mat<F> sumA(field, n, n), sumE(field, n, n);
  for (int i = 0; i <= d; ++i) {
    if (ctx.A[i].transpose() != ctx.A[ctx.tensor.star(i)])
      throw std::logic_error("context: A_b transpose != A_{b'}");
    sumA = sumA + ctx.A[i];
    sumE = sumE + ctx.E[i];
  }
  if (sumA != J) throw std::logic_error("context: sum of adjacency matrices != J");
  if (sumE != I) throw std::logic_error("context: dual idempotents do not resolve the identity");
  for (int z = 0; z <= d; ++z) {
    for (int j = 0; j <= d; ++j) {
      const Mat<F> prod = ctx.E[z] * ctx.E[j];
      if (z == j ? (prod != ctx.E[z]) : !prod.is_zero())
        throw std::logic_error("context: dual idempotents are not orthogonal idempotents");
    }
    if (J * ctx.E[z] * J != J.scaled(field.from_int(ctx.tensor.valency(z))))
      throw std::logic_error("context: J E_z* J != k_z J");
  }
  return ctx;
}

/// E_i* A_j E_l*.
template <class F>
Mat<F> triple_product(const TerwilligerContext<F>& ctx, int i, int j, int l) {
  const int d = ctx.scheme.d;
  if (i < 0 || i > d || j < 0 || j > d || l < 0 || l > d)
    throw std::out_of_range("triple_product: relation index out of range");
  return ctx.E[i] * ctx.A[j] * ctx.E[l];
}

/// The Terwilliger algebra at the context's base vertex: the smallest
/// multiplicatively closed span of the adjacency matrices and the dual
/// idempotents.  Contains I and J.
template <class F>
AlgebraBasis<F> generate_T(const TerwilligerContext<F>& ctx) {
  std::vector<Mat<F>> gens = ctx.A;
  gens.insert(gens.end(), ctx.E.begin(), ctx.E.end());
  auto alg = product_closure(ctx.field, ctx.scheme.n, gens);
  if (!alg.contains_identity) throw std::logic_error("generate_T: identity missing");
  if (!alg.contains(Mat<F>::ones(ctx.field, ctx.scheme.n, ctx.scheme.n)))
    throw std::logic_error("generate_T: all-ones matrix missing");
  return alg;
}

/// E_y* J E_z*: all-ones on the block xR_y x xR_z.
template <class F>
Mat<F> dual_j_block(const TerwilligerContext<F>& ctx, int y, int z) {
  Mat<F> m(ctx.field, ctx.scheme.n, ctx.scheme.n);
  for (int r : ctx.fibers[y])
    for (int c : ctx.fibers[z]) m.at(r, c) = ctx.field.one();
  return m;
}

/// B_ab = E_{u1 v1} + E_{u2 v2} where xR_a = {u1 < u2}, xR_b = {v1 < v2}
/// (fibers ordered by the natural vertex order).
template <class F>
Mat<F> b_element(const TerwilligerContext<F>& ctx, int a, int b) {
  if (ctx.fibers[a].size() != 2 || ctx.fibers[b].size() != 2)
    throw std::invalid_argument("b_element: both relations must have valency 2");
  Mat<F> m(ctx.field, ctx.scheme.n, ctx.scheme.n);
  m.at(ctx.fibers[a][0], ctx.fibers[b][0]) = ctx.field.one();
  m.at(ctx.fibers[a][1], ctx.fibers[b][1]) = ctx.field.one();
  return m;
}

/// The canonical spanning set B = V cup W of T for quasi-thin schemes:
/// B elements for the pairs in U = R cup S, and all dual J-blocks E_y* J E_z*.
template <class F>
struct CanonicalBasis {
  std::vector<std::pair<int, int>> r_set, s_set, u_set;  // lexicographic
  bool readings_differ = false;  ///< bad-pair definition readings disagree
  std::vector<Mat<F>> v;         ///< B_ab aligned with u_set
  std::vector<Mat<F>> w;         ///< E_y* J E_z*, (y,z) lexicographic
  std::vector<Mat<F>> all;       ///< v then w
  std::vector<std::string> labels;
};

template <class F>
CanonicalBasis<F> canonical_basis(const TerwilligerContext<F>& ctx) {
  const auto& t = ctx.tensor;
  if (!classify(t, ctx.field.characteristic()).quasi_thin)
    throw std::invalid_argument("canonical_basis: scheme is not quasi-thin");

  CanonicalBasis<F> cb;
  cb.r_set = r_pairs(t);
  auto analysis = bad_pair_analysis(t);
  cb.s_set = analysis.literal;
  cb.readings_differ = analysis.readings_differ;
  cb.u_set = cb.r_set;
  cb.u_set.insert(cb.u_set.end(), cb.s_set.begin(), cb.s_set.end());
  std::sort(cb.u_set.begin(), cb.u_set.end());
  if (std::adjacent_find(cb.u_set.begin(), cb.u_set.end()) != cb.u_set.end())
    throw std::logic_error("canonical_basis: product-size-2 pairs and bad pairs overlap");

  for (const auto& [a, b] : cb.u_set) {
    cb.v.push_back(b_element(ctx, a, b));
    cb.labels.push_back("B(" + std::to_string(a) + "," + std::to_string(b) + ")");
  }
  for (int y = 0; y <= t.d; ++y)
    for (int z = 0; z <= t.d; ++z) {
      cb.w.push_back(dual_j_block(ctx, y, z));
      cb.labels.push_back("W(" + std::to_string(y) + "," + std::to_string(z) + ")");
    }
  cb.all = cb.v;
  cb.all.insert(cb.all.end(), cb.w.begin(), cb.w.end());
  return cb;
}

/// Spanning set of the ideal J_1 = < E_a* J E_b* : max(k_a, k_b) = 2 >.
template <class F>
struct J1Basis {
  std::vector<std::pair<int, int>> pairs;  ///< (a,b) with max(k_a,k_b) = 2, lex
  std::vector<Mat<F>> gens;
  RowSpace<F> space;
};

template <class F>
J1Basis<F> j1_basis(const TerwilligerContext<F>& ctx) {
  const auto& t = ctx.tensor;
  const std::size_t width = static_cast<std::size_t>(ctx.scheme.n) * ctx.scheme.n;
  J1Basis<F> out{{}, {}, RowSpace<F>(ctx.field, width)};
  for (int a = 0; a <= t.d; ++a)
    for (int b = 0; b <= t.d; ++b) {
      if (std::max(t.valency(a), t.valency(b)) != 2) continue;
      out.pairs.emplace_back(a, b);
      out.gens.push_back(dual_j_block(ctx, a, b));
      out.space.insert(out.gens.back().flat());
    }
  if (out.space.dim() != out.pairs.size())
    throw std::logic_error("j1_basis: dual J-blocks are not independent");
  return out;
}

/// True iff the span of all triple products E_i* A_j E_l* is already closed
/// under multiplication (for quasi-thin schemes this is equivalent to triple
/// regularity).
template <class F>
bool t0_spans_algebra(const TerwilligerContext<F>& ctx) {
  const int d = ctx.scheme.d;
  const std::size_t width = static_cast<std::size_t>(ctx.scheme.n) * ctx.scheme.n;
  std::vector<Mat<F>> triples;
  RowSpace<F> span(ctx.field, width);
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= d; ++j)
      for (int l = 0; l <= d; ++l) {
        Mat<F> m = triple_product(ctx, i, j, l);
        if (m.is_zero()) continue;
        triples.push_back(std::move(m));
        span.insert(triples.back().flat());
      }
  for (const auto& a : triples)
    for (const auto& b : triples)
      if (!span.contains((a * b).flat())) return false;
  return true;
}

enum class DecompBranch { thin, odd_or_zero_char, char_two };

inline std::string branch_name(DecompBranch b) {
  switch (b) {
    case DecompBranch::thin: return "thin";
    case DecompBranch::odd_or_zero_char: return "semisimple";
    case DecompBranch::char_two: return "char2";
  }
  return "?";
}

/// Certified Wedderburn shape of T (or of T modulo its radical at p = 2).
template <class F>
struct Decomposition {
  DecompBranch branch = DecompBranch::thin;
  std::vector<int> a1, a2;               ///< valency-1 / valency-2 relations
  std::vector<std::vector<int>> classes; ///< equivalence classes of a2
  std::size_t t_dim = 0;
  RadicalCertificate<F> certificate;

  bool certified() const { return certificate.certified; }
  bool semisimple() const { return certificate.certified && certificate.radical.dim() == 0; }
};

/// Decomposes T per the characteristic:
///  - thin scheme: T = M_X, one block of size |X|, zero radical (any char);
///  - char != 2: zero radical; one block of size d+1 on the dual J-blocks
///    (units k_b^{-1} E_a* J E_b*) plus one block per equivalence class
///    (units B_gh - 2^{-1} E_g* J E_h*);
///  - char 2, non-thin: radical J_1, quotient blocks of size |A_1| (images
///    of E_a* J E_b*, a,b of valency 1) and per class (images of B_gh).
/// Every claim is pushed through the radical sandwich certifier.
template <class F>
Decomposition<F> decompose(const TerwilligerContext<F>& ctx, const AlgebraBasis<F>& T) {
  const auto& t = ctx.tensor;
  const F& f = ctx.field;
  const auto cls = classify(t, f.characteristic());
  if (!cls.quasi_thin) throw std::invalid_argument("decompose: scheme is not quasi-thin");

  std::vector<int> a1, a2;
  for (int a = 0; a <= t.d; ++a)
    (t.valency(a) == 1 ? a1 : a2).push_back(a);

  DecompBranch branch;
  std::vector<std::vector<int>> classes;
  std::vector<Mat<F>> candidate;
  std::vector<MatrixUnitBlock<F>> blocks;

  if (cls.thin) {
    branch = DecompBranch::thin;
    MatrixUnitBlock<F> full{"M_X", ctx.scheme.n, {}};
    for (int u = 0; u < ctx.scheme.n; ++u)
      for (int v = 0; v < ctx.scheme.n; ++v)
        full.units.push_back(Mat<F>::unit(f, ctx.scheme.n, u, v));
    blocks.push_back(std::move(full));
  } else if (f.characteristic() != 2) {
    branch = DecompBranch::odd_or_zero_char;
    classes = equivalence_classes(t);

    MatrixUnitBlock<F> dual{"dual", t.d + 1, {}};
    for (int a = 0; a <= t.d; ++a)
      for (int b = 0; b <= t.d; ++b)
        dual.units.push_back(
            dual_j_block(ctx, a, b).scaled(f.inv(f.from_int(t.valency(b)))));
    blocks.push_back(std::move(dual));

    const auto half = f.inv(f.from_int(2));
    for (const auto& c : classes) {
      MatrixUnitBlock<F> blk{"class-" + std::to_string(c.front()), static_cast<int>(c.size()), {}};
      for (int g : c)
        for (int h : c)
          blk.units.push_back(b_element(ctx, g, h) - dual_j_block(ctx, g, h).scaled(half));
      blocks.push_back(std::move(blk));
    }
  } else {
    branch = DecompBranch::char_two;
    classes = equivalence_classes(t);
    candidate = j1_basis(ctx).gens;

    MatrixUnitBlock<F> dual{"dual", static_cast<int>(a1.size()), {}};
    for (int a : a1)
      for (int b : a1) dual.units.push_back(dual_j_block(ctx, a, b));
    blocks.push_back(std::move(dual));

    for (const auto& c : classes) {
      MatrixUnitBlock<F> blk{"class-" + std::to_string(c.front()), static_cast<int>(c.size()), {}};
      for (int g : c)
        for (int h : c) blk.units.push_back(b_element(ctx, g, h));
      blocks.push_back(std::move(blk));
    }
  }

  return Decomposition<F>{branch,  std::move(a1),      std::move(a2),
                          std::move(classes), T.dim(), certify_radical_sandwich(T, candidate, blocks)};
}

template <class F>
Decomposition<F> decompose(const TerwilligerContext<F>& ctx) {
  return decompose(ctx, generate_T(ctx));
}

/// Corner algebra E_a* T E_a*; contains the corner identity E_a*.
template <class F>
AlgebraBasis<F> corner_algebra(const TerwilligerContext<F>& ctx, const AlgebraBasis<F>& T, int a) {
  if (a < 0 || a > ctx.scheme.d) throw std::out_of_range("corner_algebra: relation index");
  std::vector<Mat<F>> gens;
  for (const auto& b : T.basis) gens.push_back(ctx.E[a] * b * ctx.E[a]);
  auto corner = product_closure(ctx.field, ctx.scheme.n, gens);
  if (!corner.contains(ctx.E[a])) throw std::logic_error("corner_algebra: corner identity missing");
  return corner;
}

template <class F>
AlgebraBasis<F> corner_algebra(const TerwilligerContext<F>& ctx, int a) {
  return corner_algebra(ctx, generate_T(ctx), a);
}

/// Structure constants of T with respect to the canonical basis, validated
/// against the closure: every canonical element must lie in T, the canonical
/// set must be independent, and its size must equal dim T.
template <class F>
struct CanonicalStructure {
  using SparseVec = std::vector<std::pair<std::uint32_t, typename F::Element>>;
  CanonicalBasis<F> basis;
  std::size_t t_dim = 0;
  std::vector<SparseVec> table;  // m*m, m = |basis.all|
};

template <class F>
CanonicalStructure<F> canonical_structure(const TerwilligerContext<F>& ctx, const AlgebraBasis<F>& T) {
  CanonicalStructure<F> out{canonical_basis(ctx), T.dim(), {}};
  const auto& elems = out.basis.all;
  const std::size_t m = elems.size();
  if (m != T.dim())
    throw std::logic_error("canonical basis size " + std::to_string(m) + " != dim T = " +
                           std::to_string(T.dim()));

  SpanSolver<F> solver(ctx.field, static_cast<std::size_t>(ctx.scheme.n) * ctx.scheme.n);
  for (const auto& e : elems) {
    if (!T.contains(e)) throw std::logic_error("canonical element outside T");
    if (!solver.add(e.flat())) throw std::logic_error("canonical elements are not independent");
  }

  out.table.resize(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      auto coords = solver.coordinates(elems[i] * elems[j]);
      if (!coords) throw std::logic_error("canonical basis is not multiplicatively closed");
      typename CanonicalStructure<F>::SparseVec entry;
      for (std::size_t k = 0; k < m; ++k)
        if (!ctx.field.is_zero((*coords)[k]))
          entry.emplace_back(static_cast<std::uint32_t>(k), (*coords)[k]);
      out.table[i * m + j] = std::move(entry);
    }
  return out;
}

struct VertexInvariance {
  bool ok = false;
  std::string detail;  ///< first mismatch, empty when ok
};

/// Base-vertex independence: the canonical structure constants (and dim T)
/// coincide at every base vertex.
template <class F>
VertexInvariance vertex_invariance(const Scheme& s, const F& field) {
  std::optional<CanonicalStructure<F>> ref;
  for (int y = 0; y < s.n; ++y) {
    auto ctx = build_context(field, s, y);
    auto T = generate_T(ctx);
    auto cs = canonical_structure(ctx, T);
    if (!ref) {
      ref = std::move(cs);
      continue;
    }
    if (cs.t_dim != ref->t_dim)
      return {false, "dim T(" + std::to_string(y) + ") = " + std::to_string(cs.t_dim) +
                         " != dim T(0) = " + std::to_string(ref->t_dim)};
    if (cs.table.size() != ref->table.size())
      return {false, "canonical basis size differs at vertex " + std::to_string(y)};
    for (std::size_t idx = 0; idx < cs.table.size(); ++idx) {
      const auto& a = cs.table[idx];
      const auto& b = ref->table[idx];
      bool same = a.size() == b.size();
      for (std::size_t e = 0; same && e < a.size(); ++e)
        same = a[e].first == b[e].first && field.equal(a[e].second, b[e].second);
      if (!same) {
        const std::size_t m = ref->basis.all.size();
        return {false, "structure constants differ at vertex " + std::to_string(y) + " for " +
                           ref->basis.labels[idx / m] + " * " + ref->basis.labels[idx % m]};
      }
    }
  }
  return {true, ""};
}

}  // namespace twa
