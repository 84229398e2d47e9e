#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tgr/linalg.hpp"
#include "tgr/linear_matrix.hpp"
#include "tgr/polynomial.hpp"

namespace tgr {

// Builds the ring with `nvars` variables over the field described by `fs`,
// checking that the scalar type matches the descriptor.
template <class F>
Ring<F> make_ring(const FieldSpec& fs, int nvars);

template <>
inline Ring<Rat> make_ring<Rat>(const FieldSpec& fs, int nvars) {
  if (fs.kind != FieldKind::rationals) throw InputError("field descriptor does not name the rationals");
  return Ring<Rat>(nvars);
}

template <>
inline Ring<Fp> make_ring<Fp>(const FieldSpec& fs, int nvars) {
  if (fs.kind != FieldKind::prime) throw InputError("field descriptor does not name a prime field");
  return Ring<Fp>(nvars, fs.modulus);
}

// Dense tensor of order n >= 2 with entries stored row-major (last index
// fastest).  Zero-length axes are allowed: they arise as concise cores of
// zero tensors.
template <class F>
class Tensor {
 public:
  Tensor() = default;

  Tensor(const FieldSpec& fs, std::vector<int> dims) : fs_(fs), dims_(std::move(dims)) {
    if (dims_.size() < 2) throw InputError("tensor order must be at least 2");
    long n = 1;
    for (int d : dims_) {
      if (d < 0) throw InputError("negative tensor dimension");
      n *= d;
    }
    const Ring<F> r = make_ring<F>(fs_, 0);
    a_.assign(static_cast<std::size_t>(n), r.zero());
  }

  const FieldSpec& field() const { return fs_; }
  const std::vector<int>& dims() const { return dims_; }
  int order() const { return static_cast<int>(dims_.size()); }
  long size() const { return static_cast<long>(a_.size()); }

  Ring<F> scalar_ring() const { return make_ring<F>(fs_, 0); }
  Ring<F> var_ring(int nvars) const { return make_ring<F>(fs_, nvars); }
  F from_long(long n) const { return scalar_ring().from_long(n); }

  long offset(const std::vector<int>& idx) const {
    if (static_cast<int>(idx.size()) != order()) throw InputError("tensor index has wrong length");
    long off = 0;
    for (int k = 0; k < order(); ++k) {
      if (idx[k] < 0 || idx[k] >= dims_[k]) throw InputError("tensor index out of range");
      off = off * dims_[k] + idx[k];
    }
    return off;
  }

  F& at(const std::vector<int>& idx) { return a_[static_cast<std::size_t>(offset(idx))]; }
  const F& at(const std::vector<int>& idx) const { return a_[static_cast<std::size_t>(offset(idx))]; }

  F& flat(long off) { return a_[static_cast<std::size_t>(off)]; }
  const F& flat(long off) const { return a_[static_cast<std::size_t>(off)]; }

  bool is_zero() const {
    for (const F& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  bool operator==(const Tensor& o) const { return fs_ == o.fs_ && dims_ == o.dims_ && a_ == o.a_; }

 private:
  FieldSpec fs_{};
  std::vector<int> dims_;
  std::vector<F> a_;
};

// Axis-k flattening: the dims[k] x (product of the other dims) matrix whose
// row i is the slice idx[k] = i, columns ordered row-major over the remaining
// axes in ascending order.
template <class F>
Mat<F> flatten(const Tensor<F>& t, int axis) {
  if (axis < 0 || axis >= t.order()) throw InputError("flatten axis out of range");
  long rest = 1;
  for (int k = 0; k < t.order(); ++k)
    if (k != axis) rest *= t.dims()[k];
  Mat<F> m(t.scalar_ring(), t.dims()[axis], static_cast<int>(rest));
  std::vector<int> idx(static_cast<std::size_t>(t.order()), 0);
  for (long off = 0; off < t.size(); ++off) {
    long o = off;
    for (int k = t.order() - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(o % t.dims()[k]);
      o /= t.dims()[k];
    }
    long col = 0;
    for (int k = 0; k < t.order(); ++k)
      if (k != axis) col = col * t.dims()[k] + idx[k];
    m.at(idx[axis], static_cast<int>(col)) = t.flat(off);
  }
  return m;
}

// Ranks of all flattenings.  The zero tensor reports all zeros.
template <class F>
std::vector<int> multilinear_ranks(const Tensor<F>& t) {
  std::vector<int> r;
  r.reserve(t.order());
  for (int k = 0; k < t.order(); ++k) r.push_back(rank(flatten(t, k)));
  return r;
}

// Pencil of an order-3 tensor along `axis`: the rows range over the next
// axis, columns over the one after (both cyclically), and entry (j, k) is
// sum_i T[i][j][k] x_{i+1} with i running over the chosen axis.
template <class F>
LinearMatrix<F> pencil(const Tensor<F>& t, int axis) {
  if (t.order() != 3) throw InputError("pencil requires an order-3 tensor");
  if (axis < 0 || axis > 2) throw InputError("pencil axis out of range");
  const int nv = t.dims()[axis];
  if (nv > kMaxVars) throw LimitError("pencil axis exceeds the supported variable count");
  const int b = (axis + 1) % 3, c = (axis + 2) % 3;
  const Ring<F> r = t.var_ring(nv);
  LinearMatrix<F> lm(r, t.dims()[b], t.dims()[c]);
  std::vector<int> idx(3, 0);
  for (int j = 0; j < lm.rows; ++j)
    for (int k = 0; k < lm.cols; ++k) {
      std::vector<Term<F>> ts;
      for (int i = 0; i < nv; ++i) {
        idx[axis] = i;
        idx[b] = j;
        idx[c] = k;
        const F& v = t.at(idx);
        if (!v.is_zero()) ts.push_back({Monomial::var(i), v});
      }
      lm.at(j, k) = Polynomial<F>::from_terms(r, std::move(ts));
    }
  return lm;
}

// Inverse of pencil(t, 0): rebuilds the (nvars x rows x cols) tensor whose
// axis-0 pencil is `lm`.
template <class F>
Tensor<F> tensor_from_pencil(const LinearMatrix<F>& lm) {
  lm.check();
  Tensor<F> t(lm.ring.field(), {lm.nvars(), lm.rows, lm.cols});
  for (int j = 0; j < lm.rows; ++j)
    for (int k = 0; k < lm.cols; ++k)
      for (int i = 0; i < lm.nvars(); ++i) t.at({i, j, k}) = lm.at(j, k).coeff(Monomial::var(i));
  return t;
}

// Applies a linear map to one factor: out[.., s', ..] = sum_s P(s', s) t[.., s, ..].
template <class F>
Tensor<F> apply_along_axis(const Tensor<F>& t, int axis, const Mat<F>& p) {
  if (axis < 0 || axis >= t.order()) throw InputError("axis out of range");
  if (p.cols != t.dims()[axis]) throw InputError("map does not match the axis dimension");
  std::vector<int> od = t.dims();
  od[axis] = p.rows;
  Tensor<F> out(t.field(), od);
  if (out.size() == 0) return out;
  std::vector<int> idx(static_cast<std::size_t>(t.order()), 0);
  for (long off = 0; off < out.size(); ++off) {
    long o = off;
    for (int k = t.order() - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(o % od[k]);
      o /= od[k];
    }
    F acc = out.from_long(0);
    const int sp = idx[axis];
    for (int s = 0; s < t.dims()[axis]; ++s) {
      if (p.at(sp, s).is_zero()) continue;
      idx[axis] = s;
      acc = acc + p.at(sp, s) * t.at(idx);
    }
    idx[axis] = sp;
    out.flat(off) = acc;
  }
  return out;
}

// Concise core: the tensor restricted, on every factor, to the row space of
// the corresponding flattening.  `projections[k]` is the ml_k x dims[k] map
// applied to factor k; axes already of full rank get the identity.
template <class F>
struct ConciseCore {
  Tensor<F> core;
  std::vector<Mat<F>> projections;
};

template <class F>
ConciseCore<F> concise_core(const Tensor<F>& t) {
  Tensor<F> cur = t;
  std::vector<Mat<F>> proj;
  proj.reserve(static_cast<std::size_t>(t.order()));
  for (int k = 0; k < t.order(); ++k) {
    const Mat<F> m = flatten(cur, k);
    // Row reduce [M | I]; the left block of the surviving rows is an echelon
    // basis of the row space and the right block records the row operations.
    Mat<F> aug(m.ring, m.rows, m.cols + m.rows);
    for (int i = 0; i < m.rows; ++i) {
      for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
      aug.at(i, m.cols + i) = m.ring.one();
    }
    const std::vector<int> piv = rref(aug);
    int r = 0;
    for (int c : piv)
      if (c < m.cols) ++r;
    if (r == m.rows) {
      proj.push_back(Mat<F>::identity(m.ring, r));
      continue;
    }
    Mat<F> p(m.ring, r, m.rows);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < m.rows; ++j) p.at(i, j) = aug.at(i, m.cols + j);
    cur = apply_along_axis(cur, k, p);
    proj.push_back(std::move(p));
  }
  return {std::move(cur), std::move(proj)};
}

template <class F>
Tensor<F> operator+(const Tensor<F>& s, const Tensor<F>& t) {
  if (s.dims() != t.dims()) throw InputError("tensor sum needs matching dimensions");
  if (!(s.field() == t.field())) throw InputError("tensor sum needs tensors over the same field");
  Tensor<F> out = s;
  for (long off = 0; off < out.size(); ++off) out.flat(off) = out.flat(off) + t.flat(off);
  return out;
}

template <class F>
Tensor<F> operator-(const Tensor<F>& s, const Tensor<F>& t) {
  if (s.dims() != t.dims()) throw InputError("tensor difference needs matching dimensions");
  if (!(s.field() == t.field())) throw InputError("tensor difference needs tensors over the same field");
  Tensor<F> out = s;
  for (long off = 0; off < out.size(); ++off) out.flat(off) = out.flat(off) - t.flat(off);
  return out;
}

// Direct sum: block-diagonal embedding into the dimension-wise sums.
template <class F>
Tensor<F> direct_sum(const Tensor<F>& s, const Tensor<F>& t) {
  if (s.order() != t.order()) throw InputError("direct sum needs tensors of equal order");
  if (!(s.field() == t.field())) throw InputError("direct sum needs tensors over the same field");
  std::vector<int> od(static_cast<std::size_t>(s.order()));
  for (int k = 0; k < s.order(); ++k) od[k] = s.dims()[k] + t.dims()[k];
  Tensor<F> out(s.field(), od);
  std::vector<int> idx(static_cast<std::size_t>(s.order()), 0);
  auto copy_block = [&](const Tensor<F>& src, bool shifted) {
    for (long off = 0; off < src.size(); ++off) {
      long o = off;
      for (int k = src.order() - 1; k >= 0; --k) {
        idx[k] = static_cast<int>(o % src.dims()[k]);
        o /= src.dims()[k];
        if (shifted) idx[k] += s.dims()[k];
      }
      out.at(idx) = src.flat(off);
    }
  };
  copy_block(s, false);
  copy_block(t, true);
  return out;
}

}  // namespace tgr
