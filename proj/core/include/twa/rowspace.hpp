#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "twa/matrix.hpp"

namespace twa {

/// Row space of flattened vectors kept in reduced row echelon form.
///
/// Rows are stored sorted by pivot column, every pivot entry is 1 and is the
/// only nonzero entry in its column.  RREF is a canonical form, so two
/// RowSpaces are equal as subspaces iff they compare equal member-wise; this
/// is what makes dimensions, golden reports and radical comparisons
/// deterministic regardless of insertion order.
template <class F>
class RowSpace {
public:
  using Element = typename F::Element;
  using Vec = std::vector<Element>;

  RowSpace(F field, std::size_t width) : field_(field), width_(width) {}

  std::size_t width() const { return width_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Residual of v after elimination against the stored rows.
  Vec reduce(Vec v) const {
    check_width(v);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Element& c = v[pivots_[r]];
      if (field_.is_zero(c)) continue;
      axpy_neg(v, c, rows_[r]);
    }
    return v;
  }

  bool contains(const Vec& v) const {
    Vec res = reduce(v);
    for (const auto& e : res)
      if (!field_.is_zero(e)) return false;
    return true;
  }

  /// Inserts v if independent.  Returns the normalised residual row exactly
  /// as stored at insertion time (later insertions may back-eliminate it).
  std::optional<Vec> insert_residue(Vec v) {
    v = reduce(std::move(v));
    std::size_t piv = width_;
    for (std::size_t j = 0; j < width_; ++j)
      if (!field_.is_zero(v[j])) { piv = j; break; }
    if (piv == width_) return std::nullopt;

    const Element lead_inv = field_.inv(v[piv]);
    for (std::size_t j = piv; j < width_; ++j) v[j] = field_.mul(v[j], lead_inv);

    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Element& c = rows_[r][piv];
      if (field_.is_zero(c)) continue;
      axpy_neg(rows_[r], c, v);
    }

    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
    rows_.insert(rows_.begin() + pos, v);
    pivots_.insert(pivots_.begin() + pos, piv);
    return rows_[pos];
  }

  bool insert(Vec v) { return insert_residue(std::move(v)).has_value(); }

  bool operator==(const RowSpace& rhs) const {
    if (width_ != rhs.width_ || pivots_ != rhs.pivots_) return false;
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (std::size_t j = 0; j < width_; ++j)
        if (!field_.equal(rows_[r][j], rhs.rows_[r][j])) return false;
    return true;
  }
  bool operator!=(const RowSpace& rhs) const { return !(*this == rhs); }

  /// True iff rhs spans a subspace of this.
  bool contains_space(const RowSpace& rhs) const {
    for (const auto& row : rhs.rows_)
      if (!contains(row)) return false;
    return true;
  }

  const F& field() const { return field_; }

private:
  void check_width(const Vec& v) const {
    if (v.size() != width_) throw std::invalid_argument("RowSpace: width mismatch");
  }

  // v -= c * row
  void axpy_neg(Vec& v, Element c, const Vec& row) const {
    for (std::size_t j = 0; j < width_; ++j) {
      if (field_.is_zero(row[j])) continue;
      v[j] = field_.sub(v[j], field_.mul(c, row[j]));
    }
  }

  F field_;
  std::size_t width_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

/// Immutable-generator span with coordinate recovery.
///
/// Generators are appended in a fixed order; coordinates() expresses a target
/// vector as a linear combination of exactly those generators (unique when
/// the generators are independent).  Internally an augmented RREF tracks how
/// each stored row decomposes over the generator list.
template <class F>
class SpanSolver {
public:
  using Element = typename F::Element;
  using Vec = std::vector<Element>;

  SpanSolver(F field, std::size_t width) : field_(field), width_(width) {}

  std::size_t width() const { return width_; }
  std::size_t rank() const { return rows_.size(); }
  std::size_t generators() const { return n_gens_; }

  /// Returns true if the generator increased the rank.
  bool add(const Vec& g) {
    if (g.size() != width_) throw std::invalid_argument("SpanSolver: width mismatch");
    for (auto& aug : augs_) aug.push_back(field_.zero());
    Vec v = g;
    Vec aug(n_gens_ + 1, field_.zero());
    aug[n_gens_] = field_.one();
    ++n_gens_;
    eliminate(v, aug);

    std::size_t piv = width_;
    for (std::size_t j = 0; j < width_; ++j)
      if (!field_.is_zero(v[j])) { piv = j; break; }
    if (piv == width_) return false;

    const Element lead_inv = field_.inv(v[piv]);
    scale(v, lead_inv);
    scale(aug, lead_inv);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Element& c = rows_[r][piv];
      if (field_.is_zero(c)) continue;
      axpy_neg(rows_[r], c, v);
      axpy_neg(augs_[r], c, aug);
    }
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(v));
    augs_.insert(augs_.begin() + pos, std::move(aug));
    pivots_.insert(pivots_.begin() + pos, piv);
    return true;
  }

  /// Coordinates of v over the generators added so far, or nullopt if v is
  /// outside the span.
  std::optional<Vec> coordinates(const Vec& v) const {
    if (v.size() != width_) throw std::invalid_argument("SpanSolver: width mismatch");
    Vec w = v;
    Vec aug(n_gens_, field_.zero());
    eliminate(w, aug);
    for (const auto& e : w)
      if (!field_.is_zero(e)) return std::nullopt;
    for (auto& e : aug) e = field_.neg(e);
    return aug;
  }

  std::optional<Vec> coordinates(const Mat<F>& m) const { return coordinates(m.flat()); }

private:
  // Maintains the invariant row = aug . generators for every stored row; the
  // incoming pair (w, aug) satisfies v = w - aug . generators throughout.
  void eliminate(Vec& w, Vec& aug) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Element c = w[pivots_[r]];
      if (field_.is_zero(c)) continue;
      axpy_neg(w, c, rows_[r]);
      const auto& raug = augs_[r];
      for (std::size_t j = 0; j < aug.size() && j < raug.size(); ++j) {
        if (field_.is_zero(raug[j])) continue;
        aug[j] = field_.sub(aug[j], field_.mul(c, raug[j]));
      }
    }
  }

  void scale(Vec& v, const Element& c) const {
    for (auto& e : v)
      if (!field_.is_zero(e)) e = field_.mul(e, c);
  }

  void axpy_neg(Vec& v, Element c, const Vec& row) const {
    for (std::size_t j = 0; j < v.size() && j < row.size(); ++j) {
      if (field_.is_zero(row[j])) continue;
      v[j] = field_.sub(v[j], field_.mul(c, row[j]));
    }
  }

  F field_;
  std::size_t width_;
  std::size_t n_gens_ = 0;
  std::vector<Vec> rows_;
  std::vector<Vec> augs_;
  std::vector<std::size_t> pivots_;
};

/// Canonical basis of the right kernel {x : M x = 0} of the matrix whose rows
/// are given (all of length width).  Free columns are enumerated ascending.
template <class F>
std::vector<std::vector<typename F::Element>> kernel_basis(
    const F& field, const std::vector<std::vector<typename F::Element>>& mat_rows, std::size_t width) {
  RowSpace<F> rs(field, width);
  for (const auto& r : mat_rows) rs.insert(r);

  std::vector<bool> is_pivot(width, false);
  for (auto p : rs.pivots()) is_pivot[p] = true;

  std::vector<std::vector<typename F::Element>> out;
  for (std::size_t j = 0; j < width; ++j) {
    if (is_pivot[j]) continue;
    std::vector<typename F::Element> v(width, field.zero());
    v[j] = field.one();
    for (std::size_t r = 0; r < rs.dim(); ++r) v[rs.pivots()[r]] = field.neg(rs.rows()[r][j]);
    out.push_back(std::move(v));
  }
  return out;
}

inline std::size_t flat_index(int n, int i, int j) {
  return static_cast<std::size_t>(i) * n + j;
}

template <class F>
Mat<F> unflatten(const F& field, int rows, int cols, const std::vector<typename F::Element>& v) {
  Mat<F> m(field, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = v[static_cast<std::size_t>(i) * cols + j];
  return m;
}

}  // namespace twa
