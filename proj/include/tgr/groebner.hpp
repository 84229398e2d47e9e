// Buchberger's algorithm with reduced bases, plus the ideal-theoretic
// queries built on it: membership, affine dimension, solvability and
// elimination of variables.
#pragma once

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "tgr/polynomial.hpp"

namespace tgr {

constexpr long kDefaultSPairBudget = 200000;

struct DimReport {
  int ambient_dim = 0;
  int variety_dim = 0;  // -1 when the variety is empty
  int codim = 0;
  bool operator==(const DimReport&) const = default;
};

namespace detail {

// Canonical scale: primitive integer coefficients with positive leading
// coefficient over the rationals (keeps intermediate results small), monic
// over a prime field.
template <class F>
Polynomial<F> normalize_scale(const Polynomial<F>& f, const MonomialOrder& ord) {
  if (f.is_zero()) return f;
  if constexpr (std::is_same_v<F, Rat>) {
    mpz_class den(1), num(0);
    for (const auto& t : f.terms()) den = lcm(den, mpz_class(t.c.v.get_den()));
    for (const auto& t : f.terms())
      num = gcd(num, mpz_class(t.c.v.get_num() * (den / t.c.v.get_den())));
    mpq_class s(den, num);
    s.canonicalize();
    Polynomial<Rat> g = f.scaled(Rat(s));
    if (sgn(g.leading(ord).c.v) < 0) g = -g;
    return g;
  } else {
    return f.scaled(f.leading(ord).c.inv());
  }
}

// Full normal form: every term of the result is reducible by no basis
// element. Optionally tracks the sugar degree through the reduction steps.
template <class F>
Polynomial<F> reduce_full(Polynomial<F> p, const std::vector<Polynomial<F>>& basis,
                          const MonomialOrder& ord, int skip = -1,
                          int* sugar = nullptr, const std::vector<int>* sugars = nullptr) {
  Polynomial<F> rem(p.ring());
  while (!p.is_zero()) {
    const Term<F> lt = p.leading(ord);
    bool reduced = false;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (static_cast<int>(k) == skip || basis[k].is_zero()) continue;
      const Term<F>& lb = basis[k].leading(ord);
      if (!lb.m.divides(lt.m)) continue;
      Monomial q = lt.m.div(lb.m);
      p = p.fma(-(lt.c / lb.c), q, basis[k]);
      if (sugar && sugars) *sugar = std::max(*sugar, q.deg + (*sugars)[k]);
      reduced = true;
      break;
    }
    if (!reduced) {
      Polynomial<F> head = Polynomial<F>::monomial(p.ring(), lt.m, lt.c);
      rem = rem + head;
      p = p - head;
    }
  }
  return rem;
}

template <class F>
std::vector<Polynomial<F>> interreduce(std::vector<Polynomial<F>> basis,
                                       const MonomialOrder& ord) {
  std::vector<Polynomial<F>> out;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Monomial& li = basis[i].leading(ord).m;
    bool drop = false;
    for (std::size_t j = 0; j < basis.size() && !drop; ++j) {
      if (j == i) continue;
      const Monomial& lj = basis[j].leading(ord).m;
      if (lj == li ? j < i : lj.divides(li)) drop = true;
    }
    if (!drop) out.push_back(basis[i]);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    Polynomial<F> r = reduce_full(out[i], out, ord, static_cast<int>(i));
    out[i] = r.scaled(r.leading(ord).c.inv());
  }
  std::sort(out.begin(), out.end(), [&ord](const Polynomial<F>& a, const Polynomial<F>& b) {
    return ord.greater(a.leading(ord).m, b.leading(ord).m);
  });
  return out;
}

// Buchberger with the sugar selection strategy, the coprime criterion and
// the chain criterion. The budget counts S-polynomial reductions; crossing
// it raises LimitError rather than returning a partial basis.
template <class F>
std::vector<Polynomial<F>> buchberger(const Ring<F>& ring,
                                      const std::vector<Polynomial<F>>& gens,
                                      const MonomialOrder& ord, long budget) {
  std::vector<Polynomial<F>> seed;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    if (g.degree() == 0)
      return {Polynomial<F>::constant(ring, ring.one())};
    seed.push_back(normalize_scale(g, ord));
  }
  std::sort(seed.begin(), seed.end(), [&ord](const Polynomial<F>& a, const Polynomial<F>& b) {
    return ord.greater(b.leading(ord).m, a.leading(ord).m);
  });
  // Interreduce the generators first: minor ideals arrive with many redundant
  // members, and pairing them all up would swamp the queue.
  std::vector<Polynomial<F>> basis;
  std::vector<int> sugars;
  for (const auto& g : seed) {
    int sug = g.degree();
    Polynomial<F> r = reduce_full(g, basis, ord, -1, &sug, &sugars);
    if (r.is_zero()) continue;
    if (r.degree() == 0)
      return {Polynomial<F>::constant(ring, ring.one())};
    basis.push_back(normalize_scale(r, ord));
    sugars.push_back(sug);
  }
  if (basis.empty()) return {};

  struct Pair {
    int i, j;
    Monomial lcm;
    int sugar;
  };
  auto after = [ord](const Pair& a, const Pair& b) {
    if (a.sugar != b.sugar) return a.sugar > b.sugar;
    int c = ord.cmp(a.lcm, b.lcm);
    if (c != 0) return c > 0;
    if (a.i != b.i) return a.i > b.i;
    return a.j > b.j;
  };
  std::priority_queue<Pair, std::vector<Pair>, decltype(after)> queue(after);
  std::set<std::pair<int, int>> pending;

  auto push_pairs = [&](int t) {
    const Monomial& lt = basis[t].leading(ord).m;
    for (int k = 0; k < t; ++k) {
      Monomial l = Monomial::lcm(basis[k].leading(ord).m, lt);
      int sug = std::max(sugars[k] + l.deg - basis[k].leading(ord).m.deg,
                         sugars[t] + l.deg - lt.deg);
      queue.push({k, t, l, sug});
      pending.insert({k, t});
    }
  };
  for (int t = 1; t < static_cast<int>(basis.size()); ++t) push_pairs(t);

  long used = 0;
  while (!queue.empty()) {
    Pair pr = queue.top();
    queue.pop();
    pending.erase({pr.i, pr.j});
    const Term<F>& ti = basis[pr.i].leading(ord);
    const Term<F>& tj = basis[pr.j].leading(ord);
    if (ti.m.deg + tj.m.deg == pr.lcm.deg) continue;
    bool chained = false;
    for (int k = 0; k < static_cast<int>(basis.size()) && !chained; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!basis[k].leading(ord).m.divides(pr.lcm)) continue;
      if (pending.count({std::min(pr.i, k), std::max(pr.i, k)})) continue;
      if (pending.count({std::min(pr.j, k), std::max(pr.j, k)})) continue;
      chained = true;
    }
    if (chained) continue;

    if (++used > budget) throw LimitError("s-pair reduction budget exceeded");
    Polynomial<F> s(ring);
    s = s.fma(ti.c.inv(), pr.lcm.div(ti.m), basis[pr.i]);
    s = s.fma(-tj.c.inv(), pr.lcm.div(tj.m), basis[pr.j]);
    int sug = pr.sugar;
    Polynomial<F> r = reduce_full(s, basis, ord, -1, &sug, &sugars);
    if (r.is_zero()) continue;
    if (r.degree() == 0)
      return {Polynomial<F>::constant(ring, ring.one())};
    basis.push_back(normalize_scale(r, ord));
    sugars.push_back(sug);
    push_pairs(static_cast<int>(basis.size()) - 1);
  }
  return interreduce(std::move(basis), ord);
}

inline int cover_lower_bound(const std::vector<std::uint32_t>& edges) {
  int lb = 0;
  std::uint32_t used = 0;
  for (std::uint32_t e : edges)
    if (!(e & used)) {
      ++lb;
      used |= e;
    }
  return lb;
}

inline void cover_search(const std::vector<std::uint32_t>& edges, int count, int& best) {
  if (edges.empty()) {
    best = std::min(best, count);
    return;
  }
  if (count + cover_lower_bound(edges) >= best) return;
  std::uint32_t pick = edges.front();
  for (std::uint32_t e : edges)
    if (std::popcount(e) < std::popcount(pick)) pick = e;
  std::uint32_t m = pick;
  while (m) {
    int v = std::countr_zero(m);
    m &= m - 1;
    std::vector<std::uint32_t> rest;
    for (std::uint32_t e : edges)
      if (!(e >> v & 1u)) rest.push_back(e);
    cover_search(rest, count + 1, best);
  }
}

// Smallest set of variables meeting the support of every leading monomial.
inline int min_vertex_cover(std::vector<std::uint32_t> edges, int n) {
  std::sort(edges.begin(), edges.end(), [](std::uint32_t a, std::uint32_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  std::vector<std::uint32_t> minimal;
  for (std::uint32_t e : edges) {
    bool covered = false;
    for (std::uint32_t f : minimal)
      if ((f & e) == f) {
        covered = true;
        break;
      }
    if (!covered) minimal.push_back(e);
  }
  int best = n;
  cover_search(minimal, 0, best);
  return best;
}

}  // namespace detail

// Generator list with a per-order cache of reduced bases. The cache behaves
// as write-once per order; concurrent readers may duplicate a computation
// but always observe the same result.
template <class F>
class Ideal {
 public:
  long spair_budget = kDefaultSPairBudget;

  Ideal(const Ring<F>& r, std::vector<Polynomial<F>> gens)
      : ring_(r), gens_(std::move(gens)) {
    if (r.nvars < 1) throw InputError("ideal needs a ring with at least one variable");
    for (const auto& g : gens_) require_same_ring(ring_, g.ring(), "ideal generator");
  }

  Ideal(const Ideal& o) : spair_budget(o.spair_budget), ring_(o.ring_), gens_(o.gens_) {
    std::lock_guard<std::mutex> lk(o.mu_);
    cache_ = o.cache_;
  }
  Ideal& operator=(const Ideal& o) {
    if (this == &o) return *this;
    std::map<MonomialOrder, std::vector<Polynomial<F>>> copy;
    {
      std::lock_guard<std::mutex> lk(o.mu_);
      copy = o.cache_;
    }
    std::lock_guard<std::mutex> lk(mu_);
    spair_budget = o.spair_budget;
    ring_ = o.ring_;
    gens_ = o.gens_;
    cache_ = std::move(copy);
    return *this;
  }

  const Ring<F>& ring() const { return ring_; }
  const std::vector<Polynomial<F>>& generators() const { return gens_; }

  const std::vector<Polynomial<F>>& basis(const MonomialOrder& ord = MonomialOrder::grevlex()) const {
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = cache_.find(ord);
      if (it != cache_.end()) return it->second;
    }
    std::vector<Polynomial<F>> gb = detail::buchberger(ring_, gens_, ord, spair_budget);
    std::lock_guard<std::mutex> lk(mu_);
    return cache_.emplace(ord, std::move(gb)).first->second;
  }

 private:
  Ring<F> ring_;
  std::vector<Polynomial<F>> gens_;
  mutable std::map<MonomialOrder, std::vector<Polynomial<F>>> cache_;
  mutable std::mutex mu_;
};

template <class F>
const std::vector<Polynomial<F>>& groebner_basis(const Ideal<F>& I,
                                                 const MonomialOrder& ord = MonomialOrder::grevlex()) {
  return I.basis(ord);
}

template <class F>
Polynomial<F> normal_form(const Polynomial<F>& f, const Ideal<F>& I,
                          const MonomialOrder& ord = MonomialOrder::grevlex()) {
  require_same_ring(f.ring(), I.ring(), "normal form");
  return detail::reduce_full(f, I.basis(ord), ord);
}

// Krull dimension of the vanishing locus, via maximal independent variable
// sets on the leading-term ideal of the reduced basis.
template <class F>
DimReport affine_dimension(const Ideal<F>& I) {
  const auto& gb = I.basis(MonomialOrder::grevlex());
  const int n = I.ring().nvars;
  std::vector<std::uint32_t> edges;
  for (const auto& g : gb) {
    if (g.degree() == 0) return {n, -1, n + 1};
    edges.push_back(g.leading(MonomialOrder::grevlex()).m.support());
  }
  int dim = n - detail::min_vertex_cover(std::move(edges), n);
  return {n, dim, n - dim};
}

// True iff the variety is nonempty over the algebraic closure.
template <class F>
bool is_solvable(const Ideal<F>& I) {
  for (const auto& g : I.basis(MonomialOrder::grevlex()))
    if (g.degree() == 0) return false;
  return true;
}

// For homogeneous ideals: true iff the variety contains more than the origin.
template <class F>
bool has_nonzero_solution(const Ideal<F>& I) {
  for (const auto& g : I.generators())
    if (!g.is_zero() && !g.is_homogeneous())
      throw InputError("nonzero-solution test needs homogeneous generators");
  return affine_dimension(I).variety_dim >= 1;
}

// Intersection with the subring in the kept variables, via a block order
// that makes every eliminated variable dominant.
template <class F>
Ideal<F> eliminate(const Ideal<F>& I, const std::vector<int>& keep) {
  const Ring<F>& r = I.ring();
  const int n = r.nvars;
  std::vector<char> kept(n, 0);
  for (int v : keep) {
    if (v < 0 || v >= n) throw InputError("variable index out of range for ring");
    kept[v] = 1;
  }
  std::vector<int> order;
  for (int v = 0; v < n; ++v)
    if (!kept[v]) order.push_back(v);
  const int elim = static_cast<int>(order.size());
  for (int v = 0; v < n; ++v)
    if (kept[v]) order.push_back(v);
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;

  std::vector<Polynomial<F>> fwd, bwd;
  for (int v = 0; v < n; ++v) fwd.push_back(Polynomial<F>::variable(r, pos[v]));
  for (int i = 0; i < n; ++i) bwd.push_back(Polynomial<F>::variable(r, order[i]));

  std::vector<Polynomial<F>> renamed;
  for (const auto& g : I.generators()) renamed.push_back(g.subst(fwd));
  Ideal<F> J(r, std::move(renamed));
  J.spair_budget = I.spair_budget;

  const MonomialOrder ord = MonomialOrder::block(elim);
  const std::uint32_t first_block = elim >= 32 ? ~0u : (1u << elim) - 1u;
  std::vector<Polynomial<F>> out;
  for (const auto& g : J.basis(ord)) {
    if (g.leading(ord).m.support() & first_block) continue;
    Polynomial<F> h = g.subst(bwd);
    out.push_back(h.scaled(h.leading(MonomialOrder::grevlex()).c.inv()));
  }
  std::sort(out.begin(), out.end(), [](const Polynomial<F>& a, const Polynomial<F>& b) {
    MonomialOrder g = MonomialOrder::grevlex();
    return g.greater(a.leading(g).m, b.leading(g).m);
  });
  Ideal<F> res(r, std::move(out));
  res.spair_budget = I.spair_budget;
  return res;
}

}  // namespace tgr
