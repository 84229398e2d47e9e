#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

#include "tgr/error.hpp"

namespace tgr {

// -------------------------------------------------------------------------
// Word-size modular arithmetic
// -------------------------------------------------------------------------

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

// Square root mod an odd prime (Tonelli-Shanks), or nullopt for non-residues.
inline std::optional<std::uint64_t> sqrtmod_u64(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  if (powmod_u64(a, (p - 1) / 2, p) != 1) return std::nullopt;
  if (p % 4 == 3) return powmod_u64(a, (p + 1) / 4, p);
  std::uint64_t q = p - 1;
  int s = 0;
  while ((q & 1) == 0) { q >>= 1; ++s; }
  std::uint64_t z = 2;
  while (powmod_u64(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t m = s;
  std::uint64_t c = powmod_u64(z, q, p);
  std::uint64_t t = powmod_u64(a, q, p);
  std::uint64_t r = powmod_u64(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) { tt = mulmod_u64(tt, tt, p); ++i; }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod_u64(b, b, p);
    m = i;
    c = mulmod_u64(b, b, p);
    t = mulmod_u64(t, c, p);
    r = mulmod_u64(r, b, p);
  }
  return r;
}

// -------------------------------------------------------------------------
// Field descriptors
// -------------------------------------------------------------------------

inline constexpr std::uint64_t kDefaultPrime = 2147483629ULL;
inline constexpr std::uint64_t kMinPrime = (1ULL << 30);

enum class FieldKind { rationals, prime };

struct FieldSpec {
  FieldKind kind = FieldKind::rationals;
  std::uint64_t modulus = 0;  // 0 when kind == rationals

  static FieldSpec rationals() { return {FieldKind::rationals, 0}; }

  static FieldSpec prime(std::uint64_t p) {
    if (p <= kMinPrime) throw InputError("prime field modulus must exceed 2^30, got " + std::to_string(p));
    if (!is_prime_u64(p)) throw InputError("prime field modulus is not prime: " + std::to_string(p));
    return {FieldKind::prime, p};
  }

  // Labels: "qq" for the rationals, "fp:<p>" for a prime field.
  static FieldSpec parse(const std::string& label) {
    if (label == "qq") return rationals();
    if (label.rfind("fp:", 0) == 0) {
      const std::string digits = label.substr(3);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad field label: " + label);
      return prime(std::stoull(digits));
    }
    throw ParseError("bad field label: " + label + " (expected qq or fp:<p>)");
  }

  std::string label() const {
    return kind == FieldKind::rationals ? "qq" : "fp:" + std::to_string(modulus);
  }

  bool operator==(const FieldSpec&) const = default;
};

// -------------------------------------------------------------------------
// Exact rationals (GMP-backed)
// -------------------------------------------------------------------------

struct Rat {
  mpq_class v;

  Rat() : v(0) {}
  explicit Rat(long n) : v(n) {}
  explicit Rat(mpq_class q) : v(std::move(q)) {}

  bool is_zero() const { return sgn(v) == 0; }
  bool is_one() const { return v == 1; }

  Rat operator+(const Rat& o) const { return Rat(v + o.v); }
  Rat operator-(const Rat& o) const { return Rat(v - o.v); }
  Rat operator*(const Rat& o) const { return Rat(v * o.v); }
  Rat operator/(const Rat& o) const {
    if (o.is_zero()) throw InputError("division by zero");
    return Rat(v / o.v);
  }
  Rat operator-() const { return Rat(-v); }
  Rat inv() const {
    if (is_zero()) throw InputError("division by zero");
    return Rat(1 / v);
  }
  Rat& operator+=(const Rat& o) { v += o.v; return *this; }
  Rat& operator-=(const Rat& o) { v -= o.v; return *this; }
  Rat& operator*=(const Rat& o) { v *= o.v; return *this; }

  bool operator==(const Rat& o) const { return v == o.v; }
  bool operator!=(const Rat& o) const { return v != o.v; }

  std::string str() const { return v.get_str(); }
};

// -------------------------------------------------------------------------
// Prime field, modulus carried by each element
// -------------------------------------------------------------------------

struct Fp {
  std::uint64_t v = 0;
  std::uint64_t p = 0;

  Fp() = default;
  Fp(std::uint64_t value, std::uint64_t mod) : v(value % mod), p(mod) {}

  void check(const Fp& o) const {
    if (p == 0 || o.p == 0) throw ConsistencyError("uninitialized prime-field element");
    if (p != o.p) throw InputError("mixed prime-field moduli");
  }

  bool is_zero() const { return v == 0; }
  bool is_one() const { return v == 1; }

  Fp operator+(const Fp& o) const { check(o); std::uint64_t s = v + o.v; if (s >= p) s -= p; return {s, p}; }
  Fp operator-(const Fp& o) const { check(o); return {v >= o.v ? v - o.v : v + p - o.v, p}; }
  Fp operator*(const Fp& o) const { check(o); return {mulmod_u64(v, o.v, p), p}; }
  Fp operator/(const Fp& o) const { return *this * o.inv(); }
  Fp operator-() const { return {v == 0 ? 0 : p - v, p}; }
  Fp inv() const {
    if (p == 0) throw ConsistencyError("uninitialized prime-field element");
    if (v == 0) throw InputError("division by zero");
    return {powmod_u64(v, p - 2, p), p};
  }
  Fp& operator+=(const Fp& o) { *this = *this + o; return *this; }
  Fp& operator-=(const Fp& o) { *this = *this - o; return *this; }
  Fp& operator*=(const Fp& o) { *this = *this * o; return *this; }

  bool operator==(const Fp& o) const { check(o); return v == o.v; }
  bool operator!=(const Fp& o) const { return !(*this == o); }

  std::string str() const { return std::to_string(v); }
};

// -------------------------------------------------------------------------
// Polynomial ring descriptors: a variable count x1..xN plus the field.
// Small value types; equality means "same ring".
// -------------------------------------------------------------------------

template <class F>
struct Ring;

template <>
struct Ring<Rat> {
  int nvars = 0;

  Ring() = default;
  explicit Ring(int n) : nvars(n) {
    if (n < 0) throw InputError("negative variable count");
  }

  FieldSpec field() const { return FieldSpec::rationals(); }
  Rat zero() const { return Rat(); }
  Rat one() const { return Rat(1); }
  Rat from_long(long n) const { return Rat(n); }
  // num and den are decimal strings, den nonzero.
  Rat from_strings(const std::string& num, const std::string& den) const {
    mpq_class q;
    try {
      q = mpq_class(mpz_class(num), mpz_class(den));
    } catch (const std::invalid_argument&) {
      throw ParseError("bad rational literal: " + num + "/" + den);
    }
    if (sgn(q.get_den()) == 0) throw ParseError("zero denominator");
    q.canonicalize();
    return Rat(q);
  }

  bool operator==(const Ring&) const = default;
};

template <>
struct Ring<Fp> {
  int nvars = 0;
  std::uint64_t p = 0;

  Ring() = default;
  Ring(int n, std::uint64_t mod) : nvars(n), p(mod) {
    if (n < 0) throw InputError("negative variable count");
    if (!is_prime_u64(mod)) throw InputError("modulus is not prime: " + std::to_string(mod));
  }

  FieldSpec field() const { return {FieldKind::prime, p}; }
  Fp zero() const { return {0, p}; }
  Fp one() const { return {1, p}; }
  Fp from_long(long n) const {
    if (n >= 0) return {static_cast<std::uint64_t>(n) % p, p};
    std::uint64_t r = static_cast<std::uint64_t>(-(n + 1)) % p;  // avoids overflow at LONG_MIN
    return -Fp{(r + 1) % p, p};
  }
  Fp from_strings(const std::string& num, const std::string& den) const {
    mpz_class n, d;
    try {
      n = mpz_class(num);
      d = mpz_class(den);
    } catch (const std::invalid_argument&) {
      throw ParseError("bad numeric literal: " + num + "/" + den);
    }
    mpz_class pz(std::to_string(p));
    mpz_class nr = n % pz, dr = d % pz;
    if (nr < 0) nr += pz;
    if (dr < 0) dr += pz;
    Fp fn{nr.get_ui(), p}, fd{dr.get_ui(), p};
    if (fd.is_zero()) throw ParseError("denominator vanishes in the prime field");
    return fn / fd;
  }

  bool operator==(const Ring&) const = default;
};

template <class F>
void require_same_ring(const Ring<F>& a, const Ring<F>& b, const char* what) {
  if (!(a == b)) throw InputError(std::string("ring mismatch in ") + what);
}

}  // namespace tgr
