#pragma once

#include <deque>
#include <stdexcept>
#include <vector>

#include "twa/matrix.hpp"
#include "twa/rowspace.hpp"

namespace twa {

/// A multiplicatively closed subspace of n x n matrices.
///
/// `basis` holds the RREF rows of the flattened span, unflattened back into
/// matrices: a canonical basis independent of generator order.
template <class F>
struct AlgebraBasis {
  F field;
  int n;
  RowSpace<F> space;
  std::vector<Mat<F>> basis;
  bool contains_identity = false;

  std::size_t dim() const { return space.dim(); }

  bool contains(const Mat<F>& m) const { return space.contains(m.flat()); }
};

/// Smallest multiplicatively closed subspace containing the generators.
///
/// Worklist algorithm: every new independent direction is multiplied (both
/// orders) against all spanning elements found so far.  Spanning elements are
/// frozen reduced residues, so entry growth stays tame over the rationals.
/// The result is the span of all words in the generators.
template <class F>
AlgebraBasis<F> product_closure(const F& field, int n, const std::vector<Mat<F>>& generators,
                                std::size_t dim_cap = 0) {
  const std::size_t width = static_cast<std::size_t>(n) * n;
  if (dim_cap == 0) dim_cap = width;

  RowSpace<F> space(field, width);
  std::vector<Mat<F>> members;
  std::deque<std::size_t> work;

  auto consider = [&](const Mat<F>& m) {
    auto residue = space.insert_residue(m.flat());
    if (!residue) return;
    if (space.dim() > dim_cap) throw std::logic_error("product_closure: dimension cap exceeded");
    members.push_back(unflatten(field, n, n, *residue));
    work.push_back(members.size() - 1);
  };

  for (const auto& g : generators) {
    if (g.rows() != n || g.cols() != n) throw std::invalid_argument("product_closure: generator shape");
    consider(g);
  }

  while (!work.empty()) {
    const std::size_t u = work.front();
    work.pop_front();
    // Snapshot: pairs with members appended later are covered on their turn.
    const std::size_t count = members.size();
    for (std::size_t v = 0; v < count; ++v) {
      consider(members[u] * members[v]);
      if (v != u) consider(members[v] * members[u]);
    }
  }

  AlgebraBasis<F> out{field, n, std::move(space), {}, false};
  out.basis.reserve(out.space.dim());
  for (const auto& row : out.space.rows()) out.basis.push_back(unflatten(field, n, n, row));
  out.contains_identity = out.space.contains(Mat<F>::identity(field, n).flat());
  return out;
}

}  // namespace twa
