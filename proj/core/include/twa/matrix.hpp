#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace twa {

/// Dense square-capable matrix over an exact field policy F.
///
/// Multiplication skips zero entries of the left factor, which matters for
/// adjacency-like matrices and rational arithmetic; storage stays dense.
template <class F>
class Mat {
public:
  using Element = typename F::Element;

  Mat(F field, int rows, int cols)
      : field_(field), rows_(rows), cols_(cols),
        a_(static_cast<std::size_t>(rows) * cols, field.zero()) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Mat: negative shape");
  }

  static Mat identity(F field, int n) {
    Mat m(field, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = field.one();
    return m;
  }

  static Mat ones(F field, int rows, int cols) {
    Mat m(field, rows, cols);
    for (auto& e : m.a_) e = field.one();
    return m;
  }

  /// Single-entry matrix E_{r,c}.
  static Mat unit(F field, int n, int r, int c) {
    Mat m(field, n, n);
    m.at(r, c) = field.one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const F& field() const { return field_; }

  Element& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Element& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  const std::vector<Element>& flat() const { return a_; }

  Mat operator*(const Mat& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("Mat: shape mismatch in product");
    Mat out(field_, rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int k = 0; k < cols_; ++k) {
        const Element& aik = at(i, k);
        if (field_.is_zero(aik)) continue;
        for (int j = 0; j < rhs.cols_; ++j) {
          const Element& bkj = rhs.at(k, j);
          if (field_.is_zero(bkj)) continue;
          out.at(i, j) = field_.add(out.at(i, j), field_.mul(aik, bkj));
        }
      }
    }
    return out;
  }

  Mat operator+(const Mat& rhs) const {
    require_same_shape(rhs);
    Mat out(field_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_.add(a_[i], rhs.a_[i]);
    return out;
  }

  Mat operator-(const Mat& rhs) const {
    require_same_shape(rhs);
    Mat out(field_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_.sub(a_[i], rhs.a_[i]);
    return out;
  }

  Mat scaled(const Element& c) const {
    Mat out(field_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_.mul(a_[i], c);
    return out;
  }

  Mat transpose() const {
    Mat out(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
  }

  Element trace() const {
    Element t = field_.zero();
    for (int i = 0; i < rows_ && i < cols_; ++i) t = field_.add(t, at(i, i));
    return t;
  }

  /// trace(*this * rhs) without forming the product.
  Element trace_of_product(const Mat& rhs) const {
    if (cols_ != rhs.rows_ || rows_ != rhs.cols_) throw std::invalid_argument("Mat: shape mismatch in trace");
    Element t = field_.zero();
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Element& aik = at(i, k);
        if (field_.is_zero(aik)) continue;
        t = field_.add(t, field_.mul(aik, rhs.at(k, i)));
      }
    return t;
  }

  bool is_zero() const {
    for (const auto& e : a_)
      if (!field_.is_zero(e)) return false;
    return true;
  }

  bool operator==(const Mat& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (!field_.equal(a_[i], rhs.a_[i])) return false;
    return true;
  }
  bool operator!=(const Mat& rhs) const { return !(*this == rhs); }

  std::string str() const {
    std::string s;
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) {
        if (j) s += ' ';
        s += field_.str(at(i, j));
      }
      s += '\n';
    }
    return s;
  }

private:
  void require_same_shape(const Mat& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("Mat: shape mismatch");
  }

  F field_;
  int rows_, cols_;
  std::vector<Element> a_;
};

}  // namespace twa
