#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twa/closure.hpp"
#include "twa/field.hpp"
#include "twa/matrix.hpp"
#include "twa/rowspace.hpp"

namespace twa {

/// Multiplication table of a closed algebra basis, stored sparsely:
/// basis[i] * basis[j] = sum over (k, c) in prod(i, j) of c * basis[k].
template <class F>
struct StructureConstants {
  using Element = typename F::Element;
  using SparseVec = std::vector<std::pair<std::uint32_t, Element>>;

  F field;
  std::size_t m = 0;
  std::vector<SparseVec> table;  // m*m entries, row-major over (i, j)

  const SparseVec& prod(std::size_t i, std::size_t j) const { return table[i * m + j]; }

  /// Product of two coordinate vectors, dense in and out.
  std::vector<Element> multiply(const std::vector<Element>& x, const std::vector<Element>& y) const {
    std::vector<Element> out(m, field.zero());
    for (std::size_t i = 0; i < m; ++i) {
      if (field.is_zero(x[i])) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (field.is_zero(y[j])) continue;
        const Element xy = field.mul(x[i], y[j]);
        for (const auto& [k, c] : prod(i, j)) out[k] = field.add(out[k], field.mul(xy, c));
      }
    }
    return out;
  }
};

/// Expresses every pairwise product of basis elements in the basis.
/// Throws if the basis is not multiplicatively closed.
template <class F>
StructureConstants<F> structure_constants(const AlgebraBasis<F>& a) {
  const std::size_t m = a.dim();
  SpanSolver<F> solver(a.field, static_cast<std::size_t>(a.n) * a.n);
  for (const auto& b : a.basis) solver.add(b.flat());

  StructureConstants<F> sc{a.field, m, {}};
  sc.table.resize(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      auto coords = solver.coordinates(a.basis[i] * a.basis[j]);
      if (!coords) throw std::invalid_argument("structure_constants: basis is not multiplicatively closed");
      typename StructureConstants<F>::SparseVec entry;
      for (std::size_t k = 0; k < m; ++k)
        if (!a.field.is_zero((*coords)[k])) entry.emplace_back(static_cast<std::uint32_t>(k), (*coords)[k]);
      sc.table[i * m + j] = std::move(entry);
    }
  return sc;
}

/// True iff sub lies inside a and a*sub, sub*a land back in sub.
template <class F>
bool is_two_sided_ideal(const RowSpace<F>& sub, const AlgebraBasis<F>& a) {
  for (const auto& row : sub.rows())
    if (!a.space.contains(row)) return false;
  for (const auto& row : sub.rows()) {
    const Mat<F> s = unflatten(a.field, a.n, a.n, row);
    for (const auto& b : a.basis) {
      if (!sub.contains((b * s).flat())) return false;
      if (!sub.contains((s * b).flat())) return false;
    }
  }
  return true;
}

/// Least k with span(sub)^k = 0, where the k-th power is the span of all
/// k-fold products.  Search is capped at dim(sub)+1 (a nilpotent subspace of
/// dimension m has vanishing (m+1)-fold products); returns nullopt when the
/// cap is hit or the power chain stabilises at a nonzero space.
template <class F>
std::optional<int> nilpotency_index(const F& field, int n, const std::vector<Mat<F>>& sub) {
  const std::size_t width = static_cast<std::size_t>(n) * n;
  RowSpace<F> base(field, width);
  for (const auto& m : sub) base.insert(m.flat());

  const int cap = static_cast<int>(base.dim()) + 1;
  RowSpace<F> power = base;
  for (int k = 1; k <= cap; ++k) {
    if (power.dim() == 0) return k;
    RowSpace<F> next(field, width);
    for (const auto& prow : power.rows()) {
      const Mat<F> p = unflatten(field, n, n, prow);
      for (const auto& grow : base.rows()) next.insert((p * unflatten(field, n, n, grow)).flat());
    }
    if (next == power) return std::nullopt;  // stabilised nonzero: never nilpotent
    power = next;
  }
  return std::nullopt;
}

/// Jacobson radical over the rationals via the trace bilinear form:
/// rad(a) = {x in a : trace(x * b) = 0 for every basis element b}
/// (Dickson; valid in characteristic 0 for subalgebras of M_n(Q)).
/// The result is re-verified to be a nilpotent two-sided ideal.
inline RowSpace<Rationals> radical_char0(const AlgebraBasis<Rationals>& a) {
  const Rationals& q = a.field;
  const std::size_t m = a.dim();
  std::vector<std::vector<mpq_class>> gram(m, std::vector<mpq_class>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      gram[i][j] = a.basis[i].trace_of_product(a.basis[j]);
      gram[j][i] = gram[i][j];  // trace(xy) = trace(yx)
    }

  RowSpace<Rationals> rad(q, static_cast<std::size_t>(a.n) * a.n);
  std::vector<Mat<Rationals>> rad_mats;
  for (const auto& coeffs : kernel_basis(q, gram, m)) {
    Mat<Rationals> x(q, a.n, a.n);
    for (std::size_t i = 0; i < m; ++i)
      if (!q.is_zero(coeffs[i])) x = x + a.basis[i].scaled(coeffs[i]);
    rad.insert(x.flat());
    rad_mats.push_back(std::move(x));
  }

  if (!is_two_sided_ideal(rad, a))
    throw std::logic_error("radical_char0: trace-form kernel is not an ideal");
  if (!nilpotency_index(q, a.n, rad_mats))
    throw std::logic_error("radical_char0: trace-form kernel is not nilpotent");
  return rad;
}

/// a / ideal with canonical complement representatives: each algebra basis
/// row is reduced against the ideal's RREF rows; the nonzero residues are
/// put back in RREF.  image_coords maps an ambient matrix to quotient
/// coordinates over those representatives.
template <class F>
struct QuotientAlgebra {
  using Element = typename F::Element;

  F field;
  int n;
  RowSpace<F> ideal;
  std::vector<Mat<F>> reps;
  SpanSolver<F> solver;  // over the reps
  StructureConstants<F> sc;

  std::size_t dim() const { return reps.size(); }

  std::vector<Element> image_coords(const Mat<F>& x) const {
    auto coords = solver.coordinates(ideal.reduce(x.flat()));
    if (!coords) throw std::invalid_argument("QuotientAlgebra: element outside the parent algebra");
    return *coords;
  }
};

template <class F>
QuotientAlgebra<F> quotient_structure(const AlgebraBasis<F>& a, const RowSpace<F>& ideal) {
  if (!is_two_sided_ideal(ideal, a))
    throw std::invalid_argument("quotient_structure: subspace is not a two-sided ideal of the algebra");

  const std::size_t width = static_cast<std::size_t>(a.n) * a.n;
  RowSpace<F> rep_space(a.field, width);
  for (const auto& row : a.space.rows()) rep_space.insert(ideal.reduce(row));

  QuotientAlgebra<F> out{a.field, a.n,
                         ideal,   {},
                         SpanSolver<F>(a.field, width), StructureConstants<F>{a.field, 0, {}}};
  for (const auto& row : rep_space.rows()) {
    out.reps.push_back(unflatten(a.field, a.n, a.n, row));
    out.solver.add(row);
  }

  const std::size_t m = out.reps.size();
  out.sc = StructureConstants<F>{a.field, m, {}};
  out.sc.table.resize(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      auto coords = out.image_coords(out.reps[i] * out.reps[j]);
      typename StructureConstants<F>::SparseVec entry;
      for (std::size_t k = 0; k < m; ++k)
        if (!a.field.is_zero(coords[k])) entry.emplace_back(static_cast<std::uint32_t>(k), coords[k]);
      out.sc.table[i * m + j] = std::move(entry);
    }
  return out;
}

/// A claimed matrix-unit block: units[i*size + j] holds the coordinates (in
/// the structure-constant basis) of the element acting as the unit e_{ij}.
template <class F>
struct UnitBlock {
  std::string label;
  int size = 0;
  std::vector<std::vector<typename F::Element>> units;
};

struct UnitCheck {
  bool verified = false;
  std::string failure;  // empty when verified
};

/// Certifies that the given blocks exhibit the algebra behind sc as a direct
/// sum of full matrix algebras: within a block e_ij e_kl = delta_jk e_il,
/// across blocks all products vanish, the units are linearly independent and
/// their count equals sc's dimension.  When identity coordinates are given,
/// the diagonal units must sum to it.
template <class F>
UnitCheck verify_matrix_units(const StructureConstants<F>& sc, const std::vector<UnitBlock<F>>& blocks,
                              const std::optional<std::vector<typename F::Element>>& identity = std::nullopt) {
  const F& f = sc.field;
  const std::size_t m = sc.m;

  std::size_t total = 0;
  for (const auto& b : blocks) {
    if (b.size <= 0 || b.units.size() != static_cast<std::size_t>(b.size) * b.size)
      return {false, "block " + b.label + ": unit count does not match size " + std::to_string(b.size)};
    total += static_cast<std::size_t>(b.size) * b.size;
  }
  if (total != m)
    return {false, "block dimensions sum to " + std::to_string(total) + ", algebra has dimension " +
                       std::to_string(m)};

  RowSpace<F> span(f, m);
  for (const auto& b : blocks)
    for (const auto& u : b.units)
      if (u.size() != m || !span.insert(u))
        return {false, "block " + b.label + ": units are not linearly independent"};

  auto equal_vec = [&](const std::vector<typename F::Element>& x,
                       const std::vector<typename F::Element>& y) {
    for (std::size_t i = 0; i < m; ++i)
      if (!f.equal(x[i], y[i])) return false;
    return true;
  };
  const std::vector<typename F::Element> zero_vec(m, f.zero());

  for (std::size_t bi = 0; bi < blocks.size(); ++bi)
    for (std::size_t bj = 0; bj < blocks.size(); ++bj) {
      const auto& B = blocks[bi];
      const auto& C = blocks[bj];
      for (int i = 0; i < B.size; ++i)
        for (int j = 0; j < B.size; ++j)
          for (int k = 0; k < C.size; ++k)
            for (int l = 0; l < C.size; ++l) {
              auto p = sc.multiply(B.units[static_cast<std::size_t>(i) * B.size + j],
                                   C.units[static_cast<std::size_t>(k) * C.size + l]);
              const bool same_block = (bi == bj);
              const auto& expect = (same_block && j == k)
                                       ? B.units[static_cast<std::size_t>(i) * B.size + l]
                                       : zero_vec;
              if (!equal_vec(p, expect))
                return {false, "unit relation fails: " + B.label + "(" + std::to_string(i) + "," +
                                   std::to_string(j) + ") * " + C.label + "(" + std::to_string(k) + "," +
                                   std::to_string(l) + ")"};
            }
    }

  if (identity) {
    std::vector<typename F::Element> sum(m, f.zero());
    for (const auto& b : blocks)
      for (int i = 0; i < b.size; ++i) {
        const auto& e = b.units[static_cast<std::size_t>(i) * b.size + i];
        for (std::size_t t = 0; t < m; ++t) sum[t] = f.add(sum[t], e[t]);
      }
    if (!equal_vec(sum, *identity)) return {false, "diagonal units do not sum to the identity"};
  }
  return {true, ""};
}

/// A matrix-unit block given by ambient n x n matrices (converted to
/// quotient coordinates by the sandwich certifier).
template <class F>
struct MatrixUnitBlock {
  std::string label;
  int size = 0;
  std::vector<Mat<F>> units;  // size*size matrices, row-major (i, j)
};

template <class F>
struct RadicalCertificate {
  bool certified = false;
  std::string failure;
  RowSpace<F> radical;              // RREF of the certified candidate
  std::optional<int> nilpotency;    // nilpotency index of the candidate
  std::size_t quotient_dim = 0;
  std::vector<std::pair<std::string, int>> block_sizes;
};

/// Radical sandwich: if candidate is a nilpotent two-sided ideal of a and
/// a/candidate is exhibited as a direct sum of full matrix algebras (hence
/// semisimple), then candidate is exactly the Jacobson radical of a.
template <class F>
RadicalCertificate<F> certify_radical_sandwich(const AlgebraBasis<F>& a,
                                               const std::vector<Mat<F>>& candidate,
                                               const std::vector<MatrixUnitBlock<F>>& blocks) {
  const F& f = a.field;
  const std::size_t width = static_cast<std::size_t>(a.n) * a.n;

  RadicalCertificate<F> cert{false, "", RowSpace<F>(f, width), std::nullopt, 0, {}};
  for (const auto& b : blocks) cert.block_sizes.emplace_back(b.label, b.size);

  for (const auto& x : candidate) {
    if (!a.contains(x)) {
      cert.failure = "candidate element lies outside the algebra";
      return cert;
    }
    cert.radical.insert(x.flat());
  }
  if (!is_two_sided_ideal(cert.radical, a)) {
    cert.failure = "candidate is not a two-sided ideal";
    return cert;
  }
  cert.nilpotency = nilpotency_index(f, a.n, candidate);
  if (!cert.nilpotency) {
    cert.failure = "candidate is not nilpotent";
    return cert;
  }

  QuotientAlgebra<F> q = quotient_structure(a, cert.radical);
  cert.quotient_dim = q.dim();

  std::vector<UnitBlock<F>> coord_blocks;
  for (const auto& b : blocks) {
    UnitBlock<F> cb{b.label, b.size, {}};
    for (const auto& u : b.units) {
      if (!a.contains(u)) {
        cert.failure = "block " + b.label + ": unit lies outside the algebra";
        return cert;
      }
      cb.units.push_back(q.image_coords(u));
    }
    coord_blocks.push_back(std::move(cb));
  }

  std::optional<std::vector<typename F::Element>> identity;
  const Mat<F> I = Mat<F>::identity(f, a.n);
  if (a.contains(I)) identity = q.image_coords(I);

  UnitCheck check = verify_matrix_units(q.sc, coord_blocks, identity);
  if (!check.verified) {
    cert.failure = check.failure;
    return cert;
  }
  cert.certified = true;
  return cert;
}

}  // namespace twa
