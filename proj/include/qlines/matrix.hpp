#pragma once
// Dense matrices over an exact field: elimination, determinant, null space.

#include "qlines/scalar.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace qlines {

class SingularSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class F>
class Matrix {
  using T = field_traits<F>;

 public:
  Matrix(std::size_t rows, std::size_t cols, const F& like)
      : rows_(rows), cols_(cols), a_(rows * cols, T::zero_like(like)), zero_(T::zero_like(like)) {}

  static Matrix identity(std::size_t n, const F& like) {
    Matrix m(n, n, like);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T::one_like(like);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  F& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix r(x.rows_, y.cols_, x.zero_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k)
        for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += x(i, k) * y(k, j);
    return r;
  }

  std::vector<F> apply(const std::vector<F>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<F> r(rows_, zero_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  F determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
    Matrix m = *this;
    F det = T::one_like(zero_);
    for (std::size_t c = 0; c < cols_; ++c) {
      std::size_t piv = c;
      while (piv < rows_ && T::is_zero(m(piv, c))) ++piv;
      if (piv == rows_) return zero_;
      if (piv != c) {
        m.swap_rows(piv, c);
        det = -det;
      }
      det *= m(c, c);
      F inv = T::inverse(m(c, c));
      for (std::size_t r = c + 1; r < rows_; ++r) {
        if (T::is_zero(m(r, c))) continue;
        F f = m(r, c) * inv;
        for (std::size_t k = c; k < cols_; ++k) m(r, k) -= f * m(c, k);
      }
    }
    return det;
  }

  /// Reduced row echelon form in place; returns the pivot columns.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols_ && row < rows_; ++c) {
      std::size_t piv = row;
      while (piv < rows_ && T::is_zero((*this)(piv, c))) ++piv;
      if (piv == rows_) continue;
      swap_rows(piv, row);
      F inv = T::inverse((*this)(row, c));
      for (std::size_t k = c; k < cols_; ++k) (*this)(row, k) *= inv;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (r == row || T::is_zero((*this)(r, c))) continue;
        F f = (*this)(r, c);
        for (std::size_t k = c; k < cols_; ++k) (*this)(r, k) -= f * (*this)(row, k);
      }
      pivots.push_back(c);
      ++row;
    }
    return pivots;
  }

  std::size_t rank() const {
    Matrix m = *this;
    return m.rref().size();
  }

  /// Basis of {v : M v = 0}.
  std::vector<std::vector<F>> null_space() const {
    Matrix m = *this;
    auto pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<F>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<F> v(cols_, zero_);
      v[free] = T::one_like(zero_);
      for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, free);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  /// Unique solution of M x = b; throws SingularSystem otherwise.
  std::vector<F> solve(const std::vector<F>& b) const {
    if (rows_ != cols_ || b.size() != rows_) throw std::invalid_argument("solve expects a square system");
    Matrix aug(rows_, cols_ + 1, zero_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_) = b[i];
    }
    auto pivots = aug.rref();
    if (pivots.size() != cols_ || (!pivots.empty() && pivots.back() == cols_)) {
      throw SingularSystem("linear system is singular");
    }
    std::vector<F> x(cols_, zero_);
    for (std::size_t i = 0; i < cols_; ++i) x[i] = aug(i, cols_);
    return x;
  }

 private:
  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }

  std::size_t rows_, cols_;
  std::vector<F> a_;
  F zero_;
};

}  // namespace qlines
