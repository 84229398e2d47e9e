#pragma once

#include <optional>
#include <vector>

#include "tgr/polynomial.hpp"

namespace tgr {

// f / g when g divides f, empty otherwise.
template <class F>
std::optional<Polynomial<F>> try_div(const Polynomial<F>& f, const Polynomial<F>& g) {
  require_same_ring(f.ring(), g.ring(), "polynomial division");
  if (g.is_zero()) throw InputError("division by the zero polynomial");
  MonomialOrder ord = MonomialOrder::grevlex();
  const Term<F>& lg = g.leading(ord);
  Polynomial<F> q(f.ring());
  Polynomial<F> r = f;
  while (!r.is_zero()) {
    const Term<F>& lr = r.leading(ord);
    if (!lg.m.divides(lr.m)) return std::nullopt;
    F c = lr.c / lg.c;
    Monomial m = lr.m.div(lg.m);
    q = q + Polynomial<F>::monomial(f.ring(), m, c);
    r = r.fma(-c, m, g);
  }
  return q;
}

// Exact division f / g; the caller guarantees divisibility.
template <class F>
Polynomial<F> exact_div(const Polynomial<F>& f, const Polynomial<F>& g) {
  auto q = try_div(f, g);
  if (!q) throw ConsistencyError("exact division left a remainder");
  return *q;
}

namespace detail {

template <class F>
int top_variable(const Polynomial<F>& f) {
  int v = -1;
  for (const auto& t : f.terms())
    for (int i = 0; i < kMaxVars; ++i)
      if (t.m.e[i] && i > v) v = i;
  return v;
}

// Coefficient of x_v^k, with x_v stripped out.
template <class F>
Polynomial<F> coeff_in(const Polynomial<F>& f, int v, int k) {
  std::vector<Term<F>> ts;
  for (const auto& t : f.terms()) {
    if (t.m.e[v] != k) continue;
    Term<F> s = t;
    s.m.deg -= k;
    s.m.e[v] = 0;
    ts.push_back(s);
  }
  return Polynomial<F>::from_terms(f.ring(), std::move(ts));
}

template <class F>
Polynomial<F> shift_by_power(const Polynomial<F>& f, int v, int k) {
  return f * Polynomial<F>::monomial(f.ring(), Monomial::var(v, k), f.ring().one());
}

template <class F>
Polynomial<F> gcd_impl(Polynomial<F> f, Polynomial<F> g);

// Content of f viewed in (F[other vars])[x_v].
template <class F>
Polynomial<F> content_in(const Polynomial<F>& f, int v) {
  Polynomial<F> c(f.ring());
  for (int k = 0; k <= f.degree_in(v); ++k) {
    Polynomial<F> ck = coeff_in(f, v, k);
    if (ck.is_zero()) continue;
    c = c.is_zero() ? ck : gcd_impl(c, ck);
    if (c.degree() == 0) break;
  }
  return c;
}

template <class F>
Polynomial<F> pseudo_rem(Polynomial<F> f, const Polynomial<F>& g, int v) {
  int dg = g.degree_in(v);
  Polynomial<F> lg = coeff_in(g, v, dg);
  while (!f.is_zero()) {
    int df = f.degree_in(v);
    if (df < dg) break;
    Polynomial<F> lf = coeff_in(f, v, df);
    f = f * lg - shift_by_power(lf, v, df - dg) * g;
  }
  return f;
}

template <class F>
Polynomial<F> gcd_impl(Polynomial<F> f, Polynomial<F> g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  if (f.degree() == 0 || g.degree() == 0) return Polynomial<F>::constant(f.ring(), f.ring().one());
  int v = std::max(top_variable(f), top_variable(g));
  Polynomial<F> cf = content_in(f, v), cg = content_in(g, v);
  Polynomial<F> cont = gcd_impl(cf, cg);
  Polynomial<F> a = exact_div(f, cf), b = exact_div(g, cg);
  if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);
  while (true) {
    Polynomial<F> r = pseudo_rem(a, b, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) return cont;  // coprime apart from content
    a = b;
    b = exact_div(r, content_in(r, v));
  }
  return cont * b;
}

}  // namespace detail

// Greatest common divisor, normalized to have leading coefficient one.
template <class F>
Polynomial<F> poly_gcd(const Polynomial<F>& f, const Polynomial<F>& g) {
  require_same_ring(f.ring(), g.ring(), "polynomial gcd");
  Polynomial<F> d = detail::gcd_impl(f, g);
  if (d.is_zero()) return d;
  return d.scaled(d.leading(MonomialOrder::grevlex()).c.inv());
}

template <class F>
Polynomial<F> poly_gcd(const std::vector<Polynomial<F>>& fs) {
  if (fs.empty()) throw InputError("gcd of an empty list");
  Polynomial<F> d = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) {
    if (d.degree() == 0 && !d.is_zero()) break;
    d = poly_gcd(d, fs[i]);
  }
  if (!d.is_zero()) d = d.scaled(d.leading(MonomialOrder::grevlex()).c.inv());
  return d;
}

template <class F>
bool divides_poly(const Polynomial<F>& g, const Polynomial<F>& f) {
  if (g.is_zero()) return f.is_zero();
  if (f.is_zero()) return true;
  return try_div(f, g).has_value();
}

}  // namespace tgr
