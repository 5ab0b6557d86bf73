#pragma once
// Exact rational scalars (GMP-backed) and small integer helpers shared by the
// series code.  Exponents of q are rationals; inside a series they are stored
// as integers relative to a scale D, so conversion helpers live here too.
#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qrr {

using Rat = mpq_class;

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline long long gcd_ll(long long a, long long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline long long lcm_ll(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_ll(a, b) * b;
}

// floor/ceil division for possibly negative numerators, b > 0
inline long long floor_div(long long a, long long b) {
  long long q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

inline long long ceil_div(long long a, long long b) {
  return -floor_div(-a, b);
}

inline Rat rat(long long num, long long den = 1) {
  Rat r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

// gmpxx only overloads mixed arithmetic for built-in `long`; exponents here
// are `long long`, so route that case through explicitly
inline Rat operator+(const Rat& a, long long b) { return a + static_cast<long>(b); }
inline Rat operator+(long long a, const Rat& b) { return static_cast<long>(a) + b; }
inline Rat operator-(const Rat& a, long long b) { return a - static_cast<long>(b); }
inline Rat operator-(long long a, const Rat& b) { return static_cast<long>(a) - b; }
inline Rat operator*(const Rat& a, long long b) { return a * static_cast<long>(b); }
inline Rat operator*(long long a, const Rat& b) { return static_cast<long>(a) * b; }
inline Rat operator/(const Rat& a, long long b) { return a / static_cast<long>(b); }
inline Rat operator/(long long a, const Rat& b) { return static_cast<long>(a) / b; }
inline bool operator==(const Rat& a, long long b) { return a == static_cast<long>(b); }
inline bool operator==(long long a, const Rat& b) { return static_cast<long>(a) == b; }
inline bool operator!=(const Rat& a, long long b) { return a != static_cast<long>(b); }
inline bool operator!=(long long a, const Rat& b) { return static_cast<long>(a) != b; }
inline bool operator<(const Rat& a, long long b) { return a < static_cast<long>(b); }
inline bool operator<(long long a, const Rat& b) { return static_cast<long>(a) < b; }
inline bool operator<=(const Rat& a, long long b) { return a <= static_cast<long>(b); }
inline bool operator<=(long long a, const Rat& b) { return static_cast<long>(a) <= b; }
inline bool operator>(const Rat& a, long long b) { return a > static_cast<long>(b); }
inline bool operator>(long long a, const Rat& b) { return static_cast<long>(a) > b; }
inline bool operator>=(const Rat& a, long long b) { return a >= static_cast<long>(b); }
inline bool operator>=(long long a, const Rat& b) { return static_cast<long>(a) >= b; }

inline bool rat_is_int(const Rat& r) { return r.get_den() == 1; }

inline long long rat_num_ll(const Rat& r) {
  if (!r.get_num().fits_slong_p()) throw Error("rational numerator out of range");
  return r.get_num().get_si();
}

inline long long rat_den_ll(const Rat& r) {
  if (!r.get_den().fits_slong_p()) throw Error("rational denominator out of range");
  return r.get_den().get_si();
}

inline long long rat_to_ll(const Rat& r) {
  if (!rat_is_int(r)) throw Error("expected integer, got " + r.get_str());
  return rat_num_ll(r);
}

// scaled exponent of e w.r.t. scale D; requires den(e) | D
inline long long rat_scaled(const Rat& e, long long D) {
  long long den = rat_den_ll(e);
  if (D % den != 0) throw Error("exponent " + e.get_str() + " incompatible with scale");
  return rat_num_ll(e) * (D / den);
}

inline long long rat_floor_ll(const Rat& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  if (!q.fits_slong_p()) throw Error("rational out of range");
  return q.get_si();
}

inline long long rat_ceil_ll(const Rat& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  if (!q.fits_slong_p()) throw Error("rational out of range");
  return q.get_si();
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

// parses "p" or "p/q" (used by the catalog loader)
inline Rat rat_parse(const std::string& s) {
  try {
    Rat r(s);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw Error("malformed rational: " + s);
  }
}

}  // namespace qrr
