// Quadratic forms: Gram matrix, rank, and splitting into linear factors.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tgr/linalg.hpp"
#include "tgr/polynomial.hpp"

namespace tgr {

// Square root in the coefficient field, when one exists there.
inline std::optional<Rat> field_sqrt(const Rat& a) {
  if (a.is_zero()) return Rat();
  if (sgn(a.v) < 0) return std::nullopt;
  mpz_class num = a.v.get_num();
  mpz_class den = a.v.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t())) return std::nullopt;
  if (!mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  return Rat(mpq_class(sqrt(num), sqrt(den)));
}

inline std::optional<Fp> field_sqrt(const Fp& a) {
  if (a.p == 0) throw ConsistencyError("uninitialized prime-field element");
  std::optional<std::uint64_t> r = sqrtmod_u64(a.v, a.p);
  if (!r) return std::nullopt;
  return Fp(*r, a.p);
}

namespace detail {

template <class F>
Polynomial<F> gram_row_form(const Ring<F>& r, const Mat<F>& g, int i) {
  std::vector<Term<F>> ts;
  for (int j = 0; j < g.cols; ++j)
    if (!g.at(i, j).is_zero()) ts.push_back({Monomial::var(j), g.at(i, j)});
  return Polynomial<F>::from_terms(r, std::move(ts));
}

}  // namespace detail

// Symmetric Gram matrix of a homogeneous degree-2 polynomial; G(i,i) is the
// coefficient of x_{i+1}^2 and G(i,j) half the coefficient of x_{i+1}*x_{j+1}.
template <class F>
struct QuadraticForm {
  Ring<F> ring;
  Mat<F> gram;

  explicit QuadraticForm(const Polynomial<F>& q)
      : ring(q.ring()), gram(q.ring(), q.ring().nvars, q.ring().nvars) {
    if constexpr (std::is_same_v<F, Fp>) {
      if (ring.p == 2) throw InputError("quadratic forms need odd characteristic");
    }
    if (q.degree() > 2) throw InputError("quadratic form must have degree at most 2");
    if (!q.is_zero() && q.degree() < 2)
      throw InputError("quadratic form must have degree 2 or be zero");
    if (!q.is_zero() && !q.is_homogeneous())
      throw InputError("quadratic form must be homogeneous");
    const F half = ring.from_long(2).inv();
    for (const Term<F>& t : q.terms()) {
      int i = -1, j = -1;
      for (int k = 0; k < ring.nvars; ++k) {
        if (t.m.e[k] == 2) { i = j = k; break; }
        if (t.m.e[k] == 1) { (i < 0 ? i : j) = k; }
      }
      if (i == j) {
        gram.at(i, i) = t.c;
      } else {
        gram.at(i, j) = t.c * half;
        gram.at(j, i) = t.c * half;
      }
    }
  }

  int rank() const { return tgr::rank(gram); }
};

template <class F>
int quadratic_rank(const Polynomial<F>& q) {
  return QuadraticForm<F>(q).rank();
}

// Outcome of splitting a quadric into two linear forms. Split carries the
// factors; SplitInExtension means the quadric has rank 2 but the needed square
// root is missing from the coefficient field (it always splits over the
// algebraic closure); None means rank exceeds 2, so no splitting anywhere.
enum class SplitKind { Split, SplitInExtension, None };

template <class F>
struct LinearFactors {
  SplitKind kind = SplitKind::None;
  Polynomial<F> first;
  Polynomial<F> second;
};

template <class F>
LinearFactors<F> factor_linear(const Polynomial<F>& q) {
  if (q.is_zero()) throw InputError("cannot factor the zero polynomial");
  if (q.degree() > 2) throw InputError("factorization beyond degree 2 is not supported");
  const Ring<F>& r = q.ring();
  if (q.degree() <= 1)
    return {SplitKind::Split, q, Polynomial<F>::constant(r, r.one())};

  QuadraticForm<F> form(q);
  Mat<F> g = form.gram;
  const int n = r.nvars;
  const int rk = tgr::rank(g);
  if (rk > 2) return {SplitKind::None, {}, {}};
  if (rk == 0) throw ConsistencyError("nonzero quadric with zero Gram matrix");

  // A rank <= 2 Gram matrix with zero diagonal has at most one independent
  // pair of rows i, j with g(i,j) != 0, and then q = (2/g(i,j)) * u * w for
  // the row forms u, w. Otherwise eliminate on a nonzero diagonal entry.
  auto finish = [&](Polynomial<F> a, Polynomial<F> b) -> LinearFactors<F> {
    if (a * b != q) throw ConsistencyError("quadric factor check failed");
    return {SplitKind::Split, std::move(a), std::move(b)};
  };

  int d = -1;
  for (int i = 0; i < n && d < 0; ++i)
    if (!g.at(i, i).is_zero()) d = i;

  if (d < 0) {
    int bi = -1, bj = -1;
    for (int i = 0; i < n && bi < 0; ++i)
      for (int j = i + 1; j < n && bi < 0; ++j)
        if (!g.at(i, j).is_zero()) { bi = i; bj = j; }
    Polynomial<F> u = detail::gram_row_form(r, g, bi);
    Polynomial<F> w = detail::gram_row_form(r, g, bj);
    F scale = r.from_long(2) / g.at(bi, bj);
    return finish(u.scaled(scale), w);
  }

  Polynomial<F> u = detail::gram_row_form(r, g, d);
  if (rk == 1) return finish(u.scaled(g.at(d, d).inv()), u);

  // Rank 2: split off the square on the pivot, leaving a rank-1 remainder.
  Mat<F> h = g;
  const F pivot = g.at(d, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      h.at(i, j) = g.at(i, j) - g.at(i, d) * g.at(d, j) / pivot;
  int e = -1;
  for (int i = 0; i < n && e < 0; ++i)
    if (!h.at(i, i).is_zero()) e = i;
  if (e < 0) throw ConsistencyError("rank-1 remainder lost its diagonal");
  Polynomial<F> w = detail::gram_row_form(r, h, e);
  std::optional<F> s = field_sqrt(-(pivot / h.at(e, e)));
  if (!s) return {SplitKind::SplitInExtension, {}, {}};
  Polynomial<F> sw = w.scaled(*s);
  return finish((u - sw).scaled(pivot.inv()), u + sw);
}

}  // namespace tgr
