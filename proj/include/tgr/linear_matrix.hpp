#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tgr/linalg.hpp"
#include "tgr/polynomial.hpp"

namespace tgr {

// Matrix of homogeneous linear forms in the variables of `ring`.  Every entry
// is either zero or homogeneous of degree one; the constructor and check()
// enforce this, so downstream code (minors, rank strata, kappa) can assume it.
template <class F>
struct LinearMatrix {
  Ring<F> ring{};
  int rows = 0, cols = 0;
  std::vector<Polynomial<F>> e;

  LinearMatrix() = default;

  LinearMatrix(const Ring<F>& r, int m, int n)
      : ring(r), rows(m), cols(n), e(static_cast<std::size_t>(m) * n, Polynomial<F>::constant(r, r.zero())) {
    if (m < 0 || n < 0) throw InputError("negative linear matrix dimension");
  }

  int nvars() const { return ring.nvars; }

  Polynomial<F>& at(int i, int j) { return e[static_cast<std::size_t>(i) * cols + j]; }
  const Polynomial<F>& at(int i, int j) const { return e[static_cast<std::size_t>(i) * cols + j]; }

  void check() const {
    for (const Polynomial<F>& p : e) {
      require_same_ring(p.ring(), ring, "linear matrix entry");
      if (p.is_zero()) continue;
      if (p.degree() != 1 || !p.is_homogeneous())
        throw InputError("linear matrix entry is not a homogeneous linear form: " + p.str());
    }
  }

  bool is_zero() const {
    for (const Polynomial<F>& p : e)
      if (!p.is_zero()) return false;
    return true;
  }

  // Member of the span: the matrix obtained by evaluating every entry at x.
  Mat<F> eval(const std::vector<F>& x) const {
    Mat<F> m(ring, rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m.at(i, j) = at(i, j).eval(x);
    return m;
  }

  LinearMatrix transpose() const {
    LinearMatrix t(ring, cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  bool operator==(const LinearMatrix& o) const {
    return rows == o.rows && cols == o.cols && ring.nvars == o.ring.nvars && e == o.e;
  }

  std::string str() const {
    std::string s = "[";
    for (int i = 0; i < rows; ++i) {
      s += i ? ", [" : "[";
      for (int j = 0; j < cols; ++j) {
        if (j) s += ", ";
        s += at(i, j).str();
      }
      s += "]";
    }
    return s + "]";
  }
};

}  // namespace tgr
