#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tgr/field.hpp"

namespace tgr {

// Dense matrix over an exact field.
template <class F>
struct Mat {
  int rows = 0, cols = 0;
  Ring<F> ring{};
  std::vector<F> a;

  Mat() = default;
  Mat(const Ring<F>& r, int m, int n) : rows(m), cols(n), ring(r), a(static_cast<std::size_t>(m) * n, r.zero()) {
    if (m < 0 || n < 0) throw InputError("negative matrix dimension");
  }

  F& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const F& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  static Mat identity(const Ring<F>& r, int n) {
    Mat m(r, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = r.one();
    return m;
  }

  Mat transpose() const {
    Mat t(ring, cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Mat operator*(const Mat& o) const {
    require_same_ring(ring, o.ring, "matrix multiplication");
    if (cols != o.rows) throw InputError("matrix shape mismatch in multiplication");
    Mat r(ring, rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        if (at(i, k).is_zero()) continue;
        for (int j = 0; j < o.cols; ++j) r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
      }
    return r;
  }

  Mat operator+(const Mat& o) const {
    require_same_ring(ring, o.ring, "matrix addition");
    if (rows != o.rows || cols != o.cols) throw InputError("matrix shape mismatch in addition");
    Mat r = *this;
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = r.a[i] + o.a[i];
    return r;
  }

  Mat scaled(const F& c) const {
    Mat r = *this;
    for (auto& x : r.a) x = x * c;
    return r;
  }

  bool operator==(const Mat& o) const {
    if (rows != o.rows || cols != o.cols || !(ring == o.ring)) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != o.a[i]) return false;
    return true;
  }
};

// Reduced row echelon form in place; returns the pivot column indices.
template <class F>
std::vector<int> rref(Mat<F>& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int piv = -1;
    for (int i = row; i < m.rows; ++i)
      if (!m.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
    F inv = m.at(row, col).inv();
    for (int j = col; j < m.cols; ++j) m.at(row, j) = m.at(row, j) * inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || m.at(i, col).is_zero()) continue;
      F f = m.at(i, col);
      for (int j = col; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class F>
int rank(Mat<F> m) {
  return static_cast<int>(rref(m).size());
}

// Basis of the right null space, one basis vector per column.
template <class F>
Mat<F> kernel(const Mat<F>& m) {
  Mat<F> r = m;
  std::vector<int> pivots = rref(r);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  int nullity = m.cols - static_cast<int>(pivots.size());
  Mat<F> k(m.ring, m.cols, nullity);
  int out = 0;
  for (int free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    k.at(free, out) = m.ring.one();
    for (std::size_t p = 0; p < pivots.size(); ++p)
      k.at(pivots[p], out) = -r.at(static_cast<int>(p), free);
    ++out;
  }
  return k;
}

template <class F>
F det(Mat<F> m) {
  if (m.rows != m.cols) throw InputError("determinant of a non-square matrix");
  F d = m.ring.one();
  for (int col = 0; col < m.cols; ++col) {
    int piv = -1;
    for (int i = col; i < m.rows; ++i)
      if (!m.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return m.ring.zero();
    if (piv != col) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(col, j));
      d = -d;
    }
    d = d * m.at(col, col);
    F inv = m.at(col, col).inv();
    for (int i = col + 1; i < m.rows; ++i) {
      if (m.at(i, col).is_zero()) continue;
      F f = m.at(i, col) * inv;
      for (int j = col; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(col, j);
    }
  }
  return d;
}

// Solve m x = b; empty result when the system is inconsistent.
template <class F>
std::optional<std::vector<F>> solve(const Mat<F>& m, const std::vector<F>& b) {
  if (static_cast<int>(b.size()) != m.rows) throw InputError("right hand side has wrong length");
  Mat<F> aug(m.ring, m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
  }
  std::vector<int> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt;
  std::vector<F> x(m.cols, m.ring.zero());
  for (std::size_t p = 0; p < pivots.size(); ++p) x[pivots[p]] = aug.at(static_cast<int>(p), m.cols);
  return x;
}

}  // namespace tgr
