#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "tgr/error.hpp"

namespace tgr {

// Hard cap on ring width; everything here is desk scale.
inline constexpr int kMaxVars = 24;

// Exponent vector with cached total degree. Entries beyond the ring's
// variable count stay zero, so comparisons can scan the whole array.
struct Monomial {
  std::array<std::uint8_t, kMaxVars> e{};
  int deg = 0;

  static Monomial var(int i, int k = 1) {
    if (i < 0 || i >= kMaxVars) throw InputError("variable index out of range");
    Monomial m;
    m.e[i] = static_cast<std::uint8_t>(k);
    m.deg = k;
    return m;
  }

  bool is_constant() const { return deg == 0; }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) {
      int s = e[i] + o.e[i];
      if (s > 255) throw LimitError("monomial exponent overflow");
      r.e[i] = static_cast<std::uint8_t>(s);
    }
    r.deg = deg + o.deg;
    return r;
  }

  Monomial pow(int k) const {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) {
      int s = e[i] * k;
      if (s > 255) throw LimitError("monomial exponent overflow");
      r.e[i] = static_cast<std::uint8_t>(s);
    }
    r.deg = deg * k;
    return r;
  }

  bool divides(const Monomial& o) const {
    if (deg > o.deg) return false;
    for (int i = 0; i < kMaxVars; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }

  // *this / o; caller guarantees divisibility.
  Monomial div(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint8_t>(e[i] - o.e[i]);
    r.deg = deg - o.deg;
    return r;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.deg = 0;
    for (int i = 0; i < kMaxVars; ++i) {
      r.e[i] = a.e[i] > b.e[i] ? a.e[i] : b.e[i];
      r.deg += r.e[i];
    }
    return r;
  }

  static Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.deg = 0;
    for (int i = 0; i < kMaxVars; ++i) {
      r.e[i] = a.e[i] < b.e[i] ? a.e[i] : b.e[i];
      r.deg += r.e[i];
    }
    return r;
  }

  std::uint32_t support() const {
    std::uint32_t s = 0;
    for (int i = 0; i < kMaxVars; ++i)
      if (e[i]) s |= 1u << i;
    return s;
  }

  bool operator==(const Monomial& o) const { return deg == o.deg && e == o.e; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }
};

// Graded reverse lexicographic: higher degree wins; on ties the rightmost
// differing exponent decides, smaller being greater. Returns +1/0/-1.
inline int cmp_grevlex(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
  for (int i = kMaxVars - 1; i >= 0; --i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
  return 0;
}

inline int cmp_lex(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < kMaxVars; ++i)
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
  return 0;
}

enum class OrderKind { grevlex, lex, block };

// block(split) eliminates variables x1..x<split>: it compares the leading
// block by graded reverse lex first, then the tail block the same way.
struct MonomialOrder {
  OrderKind kind = OrderKind::grevlex;
  int split = 0;

  static MonomialOrder grevlex() { return {OrderKind::grevlex, 0}; }
  static MonomialOrder lex() { return {OrderKind::lex, 0}; }
  static MonomialOrder block(int split) { return {OrderKind::block, split}; }

  int cmp(const Monomial& a, const Monomial& b) const {
    switch (kind) {
      case OrderKind::grevlex:
        return cmp_grevlex(a, b);
      case OrderKind::lex:
        return cmp_lex(a, b);
      case OrderKind::block: {
        int da = 0, db = 0;
        for (int i = 0; i < split; ++i) { da += a.e[i]; db += b.e[i]; }
        if (da != db) return da > db ? 1 : -1;
        for (int i = split - 1; i >= 0; --i)
          if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
        if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
        for (int i = kMaxVars - 1; i >= split; --i)
          if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
        return 0;
      }
    }
    return 0;
  }

  bool greater(const Monomial& a, const Monomial& b) const { return cmp(a, b) > 0; }
  bool less(const Monomial& a, const Monomial& b) const { return cmp(a, b) < 0; }

  bool operator==(const MonomialOrder&) const = default;
  bool operator<(const MonomialOrder& o) const {
    if (kind != o.kind) return kind < o.kind;
    return split < o.split;
  }
};

}  // namespace tgr
