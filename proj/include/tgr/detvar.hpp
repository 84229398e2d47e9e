#pragma once

#include <algorithm>
#include <bit>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tgr/gcd.hpp"
#include "tgr/groebner.hpp"
#include "tgr/linear_matrix.hpp"
#include "tgr/quadratic.hpp"
#include "tgr/tensor.hpp"

namespace tgr {

constexpr long kDefaultChartBudget = 500;
constexpr long kMaxMinorCount = 100000;

namespace detail {

inline std::vector<std::uint32_t> k_subsets(int n, int k) {
  std::vector<std::uint32_t> out;
  if (k < 0 || k > n) return out;
  std::vector<int> pick(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::uint32_t m = 0;
    for (int v : pick) m |= 1u << v;
    out.push_back(m);
    int i = k - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

inline long binomial_capped(int n, int k, long cap) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return r;
}

// Shared-subexpression Laplace expansion over row/column masks.
template <class F>
class MinorTable {
 public:
  explicit MinorTable(const LinearMatrix<F>& e) : e_(e) {}

  const Polynomial<F>& det(std::uint32_t rmask, std::uint32_t cmask) {
    const std::uint64_t key = (static_cast<std::uint64_t>(rmask) << 32) | cmask;
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Polynomial<F> d(e_.ring);
    if (rmask == 0) {
      d = Polynomial<F>::constant(e_.ring, e_.ring.one());
    } else {
      const int row = std::countr_zero(rmask);
      const std::uint32_t rrest = rmask & (rmask - 1);
      int sign = 1;
      for (std::uint32_t m = cmask; m; m &= m - 1) {
        const int col = std::countr_zero(m);
        const Polynomial<F>& entry = e_.at(row, col);
        if (!entry.is_zero()) {
          const Polynomial<F>& sub = det(rrest, cmask & ~(1u << col));
          Polynomial<F> contrib = entry * sub;
          d = sign > 0 ? d + contrib : d - contrib;
        }
        sign = -sign;
      }
    }
    return memo_.emplace(key, std::move(d)).first->second;
  }

 private:
  const LinearMatrix<F>& e_;
  std::unordered_map<std::uint64_t, Polynomial<F>> memo_;
};

}  // namespace detail

// All nonzero k x k minors.  k above min(rows, cols) yields the empty list.
template <class F>
std::vector<Polynomial<F>> minors(const LinearMatrix<F>& e, int k) {
  e.check();
  if (k < 1) throw InputError("minor size must be positive");
  std::vector<Polynomial<F>> out;
  if (k > e.rows || k > e.cols) return out;
  if (e.rows > 31 || e.cols > 31) throw LimitError("matrix too large for minor enumeration");
  const long count = detail::binomial_capped(e.rows, k, kMaxMinorCount) *
                     detail::binomial_capped(e.cols, k, kMaxMinorCount);
  if (count > kMaxMinorCount) throw LimitError("minor count exceeds the supported limit");
  detail::MinorTable<F> table(e);
  for (std::uint32_t rm : detail::k_subsets(e.rows, k))
    for (std::uint32_t cm : detail::k_subsets(e.cols, k)) {
      const Polynomial<F>& d = table.det(rm, cm);
      if (!d.is_zero()) out.push_back(d);
    }
  return out;
}

// Every member of the span has rank at most r.
template <class F>
bool bounded_rank(const LinearMatrix<F>& e, int r) {
  if (r < 0) throw InputError("rank bound must be nonnegative");
  return minors(e, r + 1).empty();
}

// Rewrites the matrix over a ring with one variable per independent linear
// form appearing among the entries; the rank strata are unchanged up to a
// coordinate product, so codimensions agree.
template <class F>
LinearMatrix<F> normalize_span(const LinearMatrix<F>& e) {
  const int c = e.nvars();
  const int n = e.rows * e.cols;
  Mat<F> coeffs(e.ring, n, c);
  for (int i = 0; i < e.rows; ++i)
    for (int j = 0; j < e.cols; ++j)
      for (int v = 0; v < c; ++v) coeffs.at(i * e.cols + j, v) = e.at(i, j).coeff(Monomial::var(v));
  Mat<F> red = coeffs;
  const std::vector<int> piv = rref(red);
  const int s = static_cast<int>(piv.size());
  const Ring<F> rs = make_ring<F>(e.ring.field(), s);
  LinearMatrix<F> out(rs, e.rows, e.cols);
  for (int i = 0; i < e.rows; ++i)
    for (int j = 0; j < e.cols; ++j) {
      std::vector<Term<F>> ts;
      for (int v = 0; v < s; ++v) {
        const F& coef = coeffs.at(i * e.cols + j, piv[static_cast<std::size_t>(v)]);
        if (!coef.is_zero()) ts.push_back({Monomial::var(v), coef});
      }
      out.at(i, j) = Polynomial<F>::from_terms(rs, std::move(ts));
    }
  return out;
}

namespace detail {

template <class F>
LinearMatrix<F> submatrix(const LinearMatrix<F>& e, const std::vector<int>& rows, const std::vector<int>& cols) {
  LinearMatrix<F> out(e.ring, static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (int i = 0; i < out.rows; ++i)
    for (int j = 0; j < out.cols; ++j) out.at(i, j) = e.at(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
  return out;
}

// Connected components of the bipartite support graph; zero rows and columns
// belong to no component.
template <class F>
std::vector<LinearMatrix<F>> support_components(const LinearMatrix<F>& e) {
  std::vector<int> row_comp(static_cast<std::size_t>(e.rows), -1);
  std::vector<int> col_comp(static_cast<std::size_t>(e.cols), -1);
  int ncomp = 0;
  for (int start = 0; start < e.rows; ++start) {
    if (row_comp[static_cast<std::size_t>(start)] != -1) continue;
    bool nonzero = false;
    for (int j = 0; j < e.cols && !nonzero; ++j) nonzero = !e.at(start, j).is_zero();
    if (!nonzero) continue;
    const int id = ncomp++;
    std::vector<int> rq = {start};
    row_comp[static_cast<std::size_t>(start)] = id;
    std::vector<int> cq;
    while (!rq.empty() || !cq.empty()) {
      if (!rq.empty()) {
        const int i = rq.back();
        rq.pop_back();
        for (int j = 0; j < e.cols; ++j)
          if (!e.at(i, j).is_zero() && col_comp[static_cast<std::size_t>(j)] == -1) {
            col_comp[static_cast<std::size_t>(j)] = id;
            cq.push_back(j);
          }
      } else {
        const int j = cq.back();
        cq.pop_back();
        for (int i = 0; i < e.rows; ++i)
          if (!e.at(i, j).is_zero() && row_comp[static_cast<std::size_t>(i)] == -1) {
            row_comp[static_cast<std::size_t>(i)] = id;
            rq.push_back(i);
          }
      }
    }
  }
  std::vector<LinearMatrix<F>> out;
  for (int id = 0; id < ncomp; ++id) {
    std::vector<int> rows, cols;
    for (int i = 0; i < e.rows; ++i)
      if (row_comp[static_cast<std::size_t>(i)] == id) rows.push_back(i);
    for (int j = 0; j < e.cols; ++j)
      if (col_comp[static_cast<std::size_t>(j)] == id) cols.push_back(j);
    out.push_back(submatrix(e, rows, cols));
  }
  return out;
}

template <class F>
std::set<int> variable_support(const LinearMatrix<F>& e) {
  std::set<int> s;
  for (int i = 0; i < e.rows; ++i)
    for (int j = 0; j < e.cols; ++j)
      for (const Term<F>& t : e.at(i, j).terms())
        for (int v = 0; v < e.nvars(); ++v)
          if (t.m.e[static_cast<std::size_t>(v)]) s.insert(v);
  return s;
}

template <class F>
int stratum_codim_impl(const LinearMatrix<F>& e, int r, long budget);

template <class F>
int stratum_codim_base(const LinearMatrix<F>& e, int r, long budget) {
  const LinearMatrix<F> en = normalize_span(e);
  std::vector<Polynomial<F>> ms = minors(en, r + 1);
  if (ms.empty()) return 0;
  Ideal<F> ideal(en.ring, std::move(ms));
  ideal.spair_budget = budget;
  return affine_dimension(ideal).codim;
}

// The rank of a block-diagonal span is the sum over blocks, and equal blocks
// contribute equal summands.  When distinct blocks touch disjoint variables
// the stratum is a finite union of products, so its codimension is the best
// split of r among the blocks.
template <class F>
int stratum_codim_impl(const LinearMatrix<F>& e, int r, long budget) {
  if (r >= std::min(e.rows, e.cols)) return 0;
  std::vector<LinearMatrix<F>> comps = support_components(e);
  if (comps.empty()) return 0;
  if (comps.size() == 1) return stratum_codim_base(comps.front(), r, budget);

  std::vector<LinearMatrix<F>> reps;
  std::vector<int> mult;
  for (const LinearMatrix<F>& c : comps) {
    bool found = false;
    for (std::size_t j = 0; j < reps.size() && !found; ++j)
      if (reps[j] == c) {
        ++mult[j];
        found = true;
      }
    if (!found) {
      reps.push_back(c);
      mult.push_back(1);
    }
  }
  bool disjoint = true;
  std::set<int> seen;
  for (const LinearMatrix<F>& rep : reps) {
    for (int v : variable_support(rep)) {
      if (seen.count(v)) disjoint = false;
      seen.insert(v);
    }
    if (!disjoint) break;
  }
  if (!disjoint && reps.size() > 1) return stratum_codim_base(e, r, budget);

  // codims[j][p] = codim of the rank <= p stratum of rep j.
  std::vector<std::vector<int>> codims;
  std::vector<int> maxrank;
  for (const LinearMatrix<F>& rep : reps) {
    const int mr = std::min(rep.rows, rep.cols);
    maxrank.push_back(mr);
    std::vector<int> row;
    for (int p = 0; p <= mr; ++p) row.push_back(stratum_codim_impl(rep, p, budget));
    codims.push_back(std::move(row));
  }
  int best = -1;
  std::vector<int> rho(reps.size(), 0);
  const auto search = [&](auto&& self, std::size_t j, int left, int acc) -> void {
    if (best == 0) return;
    if (j == reps.size()) {
      if (best < 0 || acc < best) best = acc;
      return;
    }
    for (int p = 0; p <= maxrank[j] && p * mult[j] <= left; ++p)
      self(self, j + 1, left - p * mult[j], acc + codims[j][static_cast<std::size_t>(p)]);
  };
  search(search, 0, r, 0);
  return best;  // the all-zero split always fits, so the search found one
}

}  // namespace detail

// Codimension of {x : rank E(x) <= r} in the ambient variable space.
template <class F>
int stratum_codim(const LinearMatrix<F>& e, int r, long spair_budget = kDefaultSPairBudget) {
  e.check();
  if (r < 0) throw InputError("rank bound must be nonnegative");
  return detail::stratum_codim_impl(e, r, spair_budget);
}

namespace detail {

// b x c matrix over the row-covector ring: entry (j, i) is the coefficient
// of x_{i+1} in (u E)_j.
template <class F>
LinearMatrix<F> row_contraction(const LinearMatrix<F>& e) {
  const Ring<F> ru = make_ring<F>(e.ring.field(), e.rows);
  LinearMatrix<F> g(ru, e.cols, e.nvars());
  for (int j = 0; j < e.cols; ++j)
    for (int i = 0; i < e.nvars(); ++i) {
      std::vector<Term<F>> ts;
      for (int k = 0; k < e.rows; ++k) {
        const F coef = e.at(k, j).coeff(Monomial::var(i));
        if (!coef.is_zero()) ts.push_back({Monomial::var(k), coef});
      }
      g.at(j, i) = Polynomial<F>::from_terms(ru, std::move(ts));
    }
  return g;
}

// Smallest rank of the contraction matrix over nonzero covectors, decided
// through the minor ideals.
template <class F>
int min_contraction_rank(const LinearMatrix<F>& g, long budget) {
  const int top = std::min(g.rows, g.cols);
  for (int rho = 0; rho < top; ++rho) {
    std::vector<Polynomial<F>> ms = minors(g, rho + 1);
    if (ms.empty()) return rho;
    Ideal<F> ideal(g.ring, std::move(ms));
    ideal.spair_budget = budget;
    if (has_nonzero_solution(ideal)) return rho;
  }
  return top;
}

template <class F>
std::vector<F> contraction_witness(const LinearMatrix<F>& g, int rho) {
  const int n = g.nvars();
  const Ring<F> r = g.ring;
  std::vector<std::vector<F>> cands;
  for (int k = 0; k < n; ++k) {
    std::vector<F> u(static_cast<std::size_t>(n), r.zero());
    u[static_cast<std::size_t>(k)] = r.one();
    cands.push_back(std::move(u));
  }
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  for (int t = 0; t < 32; ++t) {
    std::vector<F> u;
    for (int k = 0; k < n; ++k) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      u.push_back(r.from_long(static_cast<long>(state >> 59) - 15));
    }
    cands.push_back(std::move(u));
  }
  for (const std::vector<F>& u : cands) {
    bool zero = true;
    for (const F& x : u) zero = zero && x.is_zero();
    if (zero) continue;
    if (rank(g.eval(u)) == rho) return u;
  }
  return {};
}

}  // namespace detail

// The two compression defects of the span, witnesses best-effort.
template <class F>
struct KappaReport {
  int kappa = 0;     // max of the two sides
  int col_side = 0;  // cols - min rank of u E over nonzero row covectors u
  int row_side = 0;  // rows - min rank of E w over nonzero column covectors w
  std::vector<F> u;  // covector attaining col_side, empty when none was found
  std::vector<F> w;  // covector attaining row_side
};

template <class F>
KappaReport<F> kappa(const LinearMatrix<F>& e, long spair_budget = kDefaultSPairBudget) {
  e.check();
  if (e.rows == 0 || e.cols == 0 || e.nvars() == 0 || e.is_zero()) {
    KappaReport<F> rep;
    rep.col_side = e.cols;
    rep.row_side = e.rows;
    rep.kappa = std::max(e.rows, e.cols);
    return rep;
  }
  KappaReport<F> rep;
  const LinearMatrix<F> gc = detail::row_contraction(e);
  const int rc = detail::min_contraction_rank(gc, spair_budget);
  rep.col_side = e.cols - rc;
  rep.u = detail::contraction_witness(gc, rc);
  const LinearMatrix<F> gr = detail::row_contraction(e.transpose());
  const int rr = detail::min_contraction_rank(gr, spair_budget);
  rep.row_side = e.rows - rr;
  rep.w = detail::contraction_witness(gr, rr);
  rep.kappa = std::max(rep.col_side, rep.row_side);
  return rep;
}

// No nonzero covector pair annihilates the span: u^T E(x) w is a nonzero
// form for all u != 0, w != 0.  Decided chart by chart on both projective
// factors.
template <class F>
bool is_e1_generic(const LinearMatrix<F>& e, long spair_budget = kDefaultSPairBudget) {
  e.check();
  const int a = e.rows, b = e.cols, c = e.nvars();
  if (a == 0 || b == 0) return false;
  if (a + b > kMaxVars) throw LimitError("pencil sides exceed the supported variable count");
  const Ring<F> r = make_ring<F>(e.ring.field(), a + b);
  std::vector<Polynomial<F>> bil;
  for (int i = 0; i < c; ++i) {
    std::vector<Term<F>> ts;
    for (int k = 0; k < a; ++k)
      for (int j = 0; j < b; ++j) {
        const F coef = e.at(k, j).coeff(Monomial::var(i));
        if (!coef.is_zero()) ts.push_back({Monomial::var(k) * Monomial::var(a + j), coef});
      }
    Polynomial<F> p = Polynomial<F>::from_terms(r, std::move(ts));
    if (!p.is_zero()) bil.push_back(std::move(p));
  }
  if (bil.empty()) return false;
  const Polynomial<F> one = Polynomial<F>::constant(r, r.one());
  for (int k = 0; k < a; ++k)
    for (int j = 0; j < b; ++j) {
      std::vector<Polynomial<F>> gens = bil;
      gens.push_back(Polynomial<F>::variable(r, k) - one);
      gens.push_back(Polynomial<F>::variable(r, a + j) - one);
      Ideal<F> ideal(r, std::move(gens));
      ideal.spair_budget = spair_budget;
      if (is_solvable(ideal)) return false;
    }
  return true;
}

// Does some (b-q)-dimensional subspace get mapped into some p-dimensional
// one by the whole span?  Charted over both Grassmannians; the all-zero
// chart assignment (coordinate subspaces) is checked first without algebra.
template <class F>
bool is_compression_space(const LinearMatrix<F>& e, int p, int q,
                          long chart_budget = kDefaultChartBudget,
                          long spair_budget = kDefaultSPairBudget,
                          std::pair<std::vector<int>, std::vector<int>>* witness = nullptr) {
  e.check();
  const int a = e.rows, b = e.cols;
  if (p < 0 || p > a || q < 0 || q > b) throw InputError("compression parameters out of range");
  if (p == a || q == b) {
    if (witness) *witness = {};
    return true;
  }
  if (!bounded_rank(e, p + q)) return false;

  const std::vector<std::uint32_t> row_charts = detail::k_subsets(a, p);
  const std::vector<std::uint32_t> col_charts = detail::k_subsets(b, b - q);
  const auto mask_list = [](std::uint32_t m) {
    std::vector<int> v;
    for (; m; m &= m - 1) v.push_back(std::countr_zero(m));
    return v;
  };

  // Coordinate pass: V spanned by coordinate vectors in T, image inside the
  // coordinates of S.
  for (std::uint32_t sm : row_charts)
    for (std::uint32_t tm : col_charts) {
      bool ok = true;
      for (int i = 0; i < a && ok; ++i) {
        if (sm & (1u << i)) continue;
        for (std::uint32_t m = tm; m && ok; m &= m - 1) ok = e.at(i, std::countr_zero(m)).is_zero();
      }
      if (ok) {
        if (witness) *witness = {mask_list(sm), mask_list(tm)};
        return true;
      }
    }

  const int ny = (a - p) * p, nz = q * (b - q);
  if (ny + nz > kMaxVars) throw LimitError("compression chart needs too many unknowns");
  if (ny + nz == 0) return false;  // sole candidate was the coordinate pair
  const Ring<F> ru = make_ring<F>(e.ring.field(), ny + nz);
  const int c = e.nvars();

  long used = 0;
  for (std::uint32_t sm : row_charts)
    for (std::uint32_t tm : col_charts) {
      if (++used > chart_budget) throw LimitError("compression chart budget exceeded");
      const std::vector<int> s = mask_list(sm);
      const std::vector<int> t = mask_list(tm);
      std::vector<int> sbar, tbar;
      for (int i = 0; i < a; ++i)
        if (!(sm & (1u << i))) sbar.push_back(i);
      for (int j = 0; j < b; ++j)
        if (!(tm & (1u << j))) tbar.push_back(j);
      // Y[i'][s']: row i' of the complement against pivot row s'; Z[j'][t']:
      // free row j' of the V basis column t'.
      const auto yvar = [&](int ib, int sp) { return ib * p + sp; };
      const auto zvar = [&](int jb, int tp) { return ny + jb * (b - q) + tp; };
      // coefficient of x_i in (E v_t)_row as a polynomial in the unknowns
      const auto image_coeff = [&](int row, int tp, int i) {
        Polynomial<F> acc =
            Polynomial<F>::constant(ru, e.at(row, t[static_cast<std::size_t>(tp)]).coeff(Monomial::var(i)));
        for (int jb = 0; jb < static_cast<int>(tbar.size()); ++jb) {
          const F coef = e.at(row, tbar[static_cast<std::size_t>(jb)]).coeff(Monomial::var(i));
          if (!coef.is_zero())
            acc = acc + Polynomial<F>::monomial(ru, Monomial::var(zvar(jb, tp)), coef);
        }
        return acc;
      };
      std::vector<Polynomial<F>> eqs;
      for (int tp = 0; tp < b - q; ++tp)
        for (int i = 0; i < c; ++i) {
          std::vector<Polynomial<F>> tops;
          for (int sp = 0; sp < p; ++sp) tops.push_back(image_coeff(s[static_cast<std::size_t>(sp)], tp, i));
          for (int ib = 0; ib < static_cast<int>(sbar.size()); ++ib) {
            Polynomial<F> eq = image_coeff(sbar[static_cast<std::size_t>(ib)], tp, i);
            for (int sp = 0; sp < p; ++sp)
              eq = eq - Polynomial<F>::variable(ru, yvar(ib, sp)) * tops[static_cast<std::size_t>(sp)];
            if (!eq.is_zero()) eqs.push_back(std::move(eq));
          }
        }
      if (eqs.empty()) {
        if (witness) *witness = {s, t};
        return true;
      }
      Ideal<F> ideal(ru, std::move(eqs));
      ideal.spair_budget = spair_budget;
      if (is_solvable(ideal)) {
        if (witness) *witness = {s, t};
        return true;
      }
    }
  return false;
}

// Monic gcd of the nonzero k-minors, with the quadric rank attached when the
// gcd is a quadratic form.
template <class F>
struct CommonFactorReport {
  int k = 0;
  Polynomial<F> common;
  std::optional<int> quadric_rank;
};

template <class F>
CommonFactorReport<F> common_factor_report(const LinearMatrix<F>& e, int k) {
  std::vector<Polynomial<F>> ms = minors(e, k);
  if (ms.empty()) throw InputError("every minor of the requested size vanishes");
  CommonFactorReport<F> rep;
  rep.k = k;
  rep.common = poly_gcd(ms);
  if (rep.common.degree() == 2 && rep.common.is_homogeneous()) rep.quadric_rank = quadratic_rank(rep.common);
  return rep;
}

// Ranks of the evaluated span at the given points, each of which must lie on
// the vanishing locus of s.
template <class F>
std::vector<int> constant_rank_probe(const LinearMatrix<F>& e, const Polynomial<F>& s,
                                     const std::vector<std::vector<F>>& points) {
  e.check();
  require_same_ring(s.ring(), e.ring, "rank probe locus");
  std::vector<int> out;
  for (const std::vector<F>& pt : points) {
    if (static_cast<int>(pt.size()) != e.nvars()) throw InputError("probe point has wrong length");
    if (!s.eval(pt).is_zero()) throw InputError("probe point is not on the locus");
    out.push_back(rank(e.eval(pt)));
  }
  return out;
}

}  // namespace tgr
