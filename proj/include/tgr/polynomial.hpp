#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "tgr/field.hpp"
#include "tgr/monomial.hpp"

namespace tgr {

template <class F>
struct Term {
  Monomial m;
  F c;
};

inline bool display_negative(const Rat& c) { return sgn(c.v) < 0; }
inline bool display_negative(const Fp&) { return false; }
inline Rat display_abs(const Rat& c) { return Rat(abs(c.v)); }
inline Fp display_abs(const Fp& c) { return c; }

// Sparse multivariate polynomial, canonical form: terms sorted by graded
// reverse lex, descending, no zero coefficients.
template <class F>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const Ring<F>& r) : ring_(r) {}

  static Polynomial constant(const Ring<F>& r, const F& c) {
    Polynomial p(r);
    if (!c.is_zero()) p.t_.push_back({Monomial{}, c});
    return p;
  }

  static Polynomial variable(const Ring<F>& r, int i) {
    if (i < 0 || i >= r.nvars) throw InputError("variable index out of range for ring");
    Polynomial p(r);
    p.t_.push_back({Monomial::var(i), r.one()});
    return p;
  }

  static Polynomial monomial(const Ring<F>& r, const Monomial& m, const F& c) {
    for (int i = r.nvars; i < kMaxVars; ++i)
      if (m.e[i]) throw InputError("monomial uses variables outside the ring");
    Polynomial p(r);
    if (!c.is_zero()) p.t_.push_back({m, c});
    return p;
  }

  static Polynomial from_terms(const Ring<F>& r, std::vector<Term<F>> ts) {
    Polynomial p(r);
    p.t_ = std::move(ts);
    p.canonicalize();
    return p;
  }

  const Ring<F>& ring() const { return ring_; }
  const std::vector<Term<F>>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  int degree() const { return t_.empty() ? -1 : t_.front().m.deg; }

  int degree_in(int var) const {
    int d = 0;
    for (const auto& t : t_) d = std::max<int>(d, t.m.e[var]);
    return d;
  }

  bool is_homogeneous() const {
    for (const auto& t : t_)
      if (t.m.deg != t_.front().m.deg) return false;
    return true;
  }

  const Term<F>& leading(const MonomialOrder& ord) const {
    if (t_.empty()) throw InputError("leading term of the zero polynomial");
    if (ord.kind == OrderKind::grevlex) return t_.front();
    std::size_t best = 0;
    for (std::size_t i = 1; i < t_.size(); ++i)
      if (ord.greater(t_[i].m, t_[best].m)) best = i;
    return t_[best];
  }

  F coeff(const Monomial& m) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), m, [](const Term<F>& t, const Monomial& key) {
      return cmp_grevlex(t.m, key) > 0;
    });
    if (it != t_.end() && it->m == m) return it->c;
    return ring_.zero();
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.t_) t.c = -t.c;
    return r;
  }

  Polynomial operator+(const Polynomial& o) const {
    require_same_ring(ring_, o.ring_, "polynomial addition");
    Polynomial r(ring_);
    r.t_.reserve(t_.size() + o.t_.size());
    std::size_t i = 0, j = 0;
    while (i < t_.size() && j < o.t_.size()) {
      int c = cmp_grevlex(t_[i].m, o.t_[j].m);
      if (c > 0) {
        r.t_.push_back(t_[i++]);
      } else if (c < 0) {
        r.t_.push_back(o.t_[j++]);
      } else {
        F s = t_[i].c + o.t_[j].c;
        if (!s.is_zero()) r.t_.push_back({t_[i].m, s});
        ++i;
        ++j;
      }
    }
    for (; i < t_.size(); ++i) r.t_.push_back(t_[i]);
    for (; j < o.t_.size(); ++j) r.t_.push_back(o.t_[j]);
    return r;
  }

  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

  Polynomial operator*(const Polynomial& o) const {
    require_same_ring(ring_, o.ring_, "polynomial multiplication");
    Polynomial r(ring_);
    if (t_.empty() || o.t_.empty()) return r;
    r.t_.reserve(t_.size() * o.t_.size());
    for (const auto& a : t_)
      for (const auto& b : o.t_) r.t_.push_back({a.m * b.m, a.c * b.c});
    r.canonicalize();
    return r;
  }

  Polynomial scaled(const F& c) const {
    Polynomial r(ring_);
    if (c.is_zero()) return r;
    r.t_ = t_;
    for (auto& t : r.t_) t.c = t.c * c;
    return r;
  }

  // *this + c * m * g, the basic reduction step.
  Polynomial fma(const F& c, const Monomial& m, const Polynomial& g) const {
    require_same_ring(ring_, g.ring_, "polynomial fma");
    Polynomial shifted(ring_);
    if (!c.is_zero()) {
      shifted.t_.reserve(g.t_.size());
      for (const auto& t : g.t_) shifted.t_.push_back({t.m * m, t.c * c});
    }
    return *this + shifted;
  }

  Polynomial pow(int e) const {
    if (e < 0) throw InputError("negative polynomial power");
    Polynomial r = constant(ring_, ring_.one());
    Polynomial b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = e > 1 ? b * b : b;
      e >>= 1;
    }
    return r;
  }

  F eval(const std::vector<F>& x) const {
    if (static_cast<int>(x.size()) != ring_.nvars) throw InputError("evaluation point has wrong length");
    F acc = ring_.zero();
    for (const auto& t : t_) {
      F prod = t.c;
      for (int i = 0; i < ring_.nvars; ++i) {
        for (int k = 0; k < t.m.e[i]; ++k) prod = prod * x[i];
      }
      acc = acc + prod;
    }
    return acc;
  }

  // Substitute subs[i] for variable i; all subs share one target ring.
  Polynomial subst(const std::vector<Polynomial>& subs) const {
    if (static_cast<int>(subs.size()) != ring_.nvars) throw InputError("substitution list has wrong length");
    Ring<F> target = subs.empty() ? ring_ : subs.front().ring();
    for (const auto& s : subs) require_same_ring(target, s.ring(), "substitution");
    std::vector<std::vector<Polynomial>> pows(subs.size());
    auto power = [&](int i, int e) -> const Polynomial& {
      auto& cache = pows[i];
      if (cache.empty()) cache.push_back(constant(target, target.one()));
      while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * subs[i]);
      return cache[e];
    };
    Polynomial acc(target);
    for (const auto& t : t_) {
      Polynomial prod = constant(target, t.c);
      for (int i = 0; i < ring_.nvars; ++i)
        if (t.m.e[i]) prod = prod * power(i, t.m.e[i]);
      acc = acc + prod;
    }
    return acc;
  }

  bool operator==(const Polynomial& o) const {
    if (!(ring_ == o.ring_) || t_.size() != o.t_.size()) return false;
    for (std::size_t i = 0; i < t_.size(); ++i)
      if (t_[i].m != o.t_[i].m || t_[i].c != o.t_[i].c) return false;
    return true;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  std::string str() const {
    if (t_.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < t_.size(); ++k) {
      const auto& t = t_[k];
      bool neg = display_negative(t.c);
      if (k == 0) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      F a = display_abs(t.c);
      if (t.m.is_constant()) {
        out += a.str();
      } else {
        if (!a.is_one()) {
          out += a.str();
          out += "*";
        }
        bool first = true;
        for (int i = 0; i < ring_.nvars; ++i) {
          if (!t.m.e[i]) continue;
          if (!first) out += "*";
          first = false;
          out += "x" + std::to_string(i + 1);
          if (t.m.e[i] > 1) out += "^" + std::to_string(static_cast<int>(t.m.e[i]));
        }
      }
    }
    return out;
  }

 private:
  void canonicalize() {
    std::sort(t_.begin(), t_.end(),
              [](const Term<F>& a, const Term<F>& b) { return cmp_grevlex(a.m, b.m) > 0; });
    std::vector<Term<F>> out;
    out.reserve(t_.size());
    for (auto& t : t_) {
      if (!out.empty() && out.back().m == t.m) {
        out.back().c = out.back().c + t.c;
        if (out.back().c.is_zero()) out.pop_back();
      } else if (!t.c.is_zero()) {
        out.push_back(std::move(t));
      }
    }
    t_ = std::move(out);
  }

  Ring<F> ring_{};
  std::vector<Term<F>> t_;
};

// -------------------------------------------------------------------------
// Text format: sums of terms like "3/2*x1^2*x4 - x2*x3". Parentheses and
// unary minus are accepted; '/' only forms numeric literals.
// -------------------------------------------------------------------------

namespace detail {

struct PolyLexer {
  enum Kind { kNum, kVar, kPlus, kMinus, kMul, kPow, kLParen, kRParen, kEnd };
  struct Tok {
    Kind kind;
    std::string text;  // digits for kNum, index digits for kVar
  };

  explicit PolyLexer(const std::string& s) : s_(s) { next(); }

  const Tok& peek() const { return tok_; }

  Tok take() {
    Tok t = tok_;
    next();
    return t;
  }

 private:
  void next() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ >= s_.size()) {
      tok_ = {kEnd, ""};
      return;
    }
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      tok_ = {kNum, s_.substr(i_, j - i_)};
      i_ = j;
      return;
    }
    if (c == 'x') {
      std::size_t j = i_ + 1;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      if (j == i_ + 1) throw ParseError("variable name must be x<k> at offset " + std::to_string(i_));
      tok_ = {kVar, s_.substr(i_ + 1, j - i_ - 1)};
      i_ = j;
      return;
    }
    ++i_;
    switch (c) {
      case '+': tok_ = {kPlus, ""}; return;
      case '-': tok_ = {kMinus, ""}; return;
      case '*': tok_ = {kMul, ""}; return;
      case '^': tok_ = {kPow, ""}; return;
      case '(': tok_ = {kLParen, ""}; return;
      case ')': tok_ = {kRParen, ""}; return;
      case '/': tok_ = {kMul, "/"}; return;  // validated by the parser
      default:
        throw ParseError(std::string("unexpected character '") + c + "' in polynomial");
    }
  }

  const std::string& s_;
  std::size_t i_ = 0;
  Tok tok_;
};

template <class F>
class PolyParser {
 public:
  PolyParser(const Ring<F>& r, const std::string& text) : ring_(r), lex_(text) {}

  Polynomial<F> parse() {
    Polynomial<F> p = expr();
    if (lex_.peek().kind != PolyLexer::kEnd) throw ParseError("trailing input after polynomial");
    return p;
  }

 private:
  using Tok = PolyLexer::Tok;

  Polynomial<F> expr() {
    bool neg = false;
    if (lex_.peek().kind == PolyLexer::kPlus) lex_.take();
    else if (lex_.peek().kind == PolyLexer::kMinus) { lex_.take(); neg = true; }
    Polynomial<F> acc = term();
    if (neg) acc = -acc;
    while (true) {
      auto k = lex_.peek().kind;
      if (k == PolyLexer::kPlus) {
        lex_.take();
        acc = acc + term();
      } else if (k == PolyLexer::kMinus) {
        lex_.take();
        acc = acc - term();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial<F> term() {
    Polynomial<F> acc = factor();
    while (lex_.peek().kind == PolyLexer::kMul) {
      Tok t = lex_.take();
      if (t.text == "/") throw ParseError("'/' is only valid inside a numeric literal");
      acc = acc * factor();
    }
    return acc;
  }

  Polynomial<F> factor() {
    Polynomial<F> base = atom();
    if (lex_.peek().kind == PolyLexer::kPow) {
      lex_.take();
      if (lex_.peek().kind != PolyLexer::kNum) throw ParseError("exponent must be a literal integer");
      int e = std::stoi(lex_.take().text);
      base = base.pow(e);
    }
    return base;
  }

  Polynomial<F> atom() {
    auto k = lex_.peek().kind;
    if (k == PolyLexer::kMinus) {
      lex_.take();
      return -factor();
    }
    if (k == PolyLexer::kLParen) {
      lex_.take();
      Polynomial<F> p = expr();
      if (lex_.peek().kind != PolyLexer::kRParen) throw ParseError("missing ')'");
      lex_.take();
      return p;
    }
    if (k == PolyLexer::kNum) {
      std::string num = lex_.take().text;
      std::string den = "1";
      if (lex_.peek().kind == PolyLexer::kMul && lex_.peek().text == "/") {
        lex_.take();
        if (lex_.peek().kind != PolyLexer::kNum) throw ParseError("expected integer denominator");
        den = lex_.take().text;
      }
      return Polynomial<F>::constant(ring_, ring_.from_strings(num, den));
    }
    if (k == PolyLexer::kVar) {
      int idx = std::stoi(lex_.take().text);
      if (idx < 1 || idx > ring_.nvars)
        throw ParseError("variable x" + std::to_string(idx) + " outside ring with " +
                         std::to_string(ring_.nvars) + " variables");
      return Polynomial<F>::variable(ring_, idx - 1);
    }
    throw ParseError("expected a number, variable, or '('");
  }

  Ring<F> ring_;
  PolyLexer lex_;
};

}  // namespace detail

template <class F>
Polynomial<F> parse_polynomial(const Ring<F>& r, const std::string& text) {
  return detail::PolyParser<F>(r, text).parse();
}

}  // namespace tgr
