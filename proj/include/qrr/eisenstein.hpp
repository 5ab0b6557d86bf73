#pragma once
// Coefficient field Q(w), w a primitive cube root of unity (w^2 = -1 - w).
// Values are kept on the basis {1, w} with exact rational components, so
// equality is componentwise and no floating point ever enters.
#include "qrr/rational.hpp"

namespace qrr {

struct Eis {
  Rat re;  // coefficient of 1
  Rat om;  // coefficient of w

  Eis() : re(0), om(0) {}
  Eis(long long n) : re(rat(n)), om(0) {}  // NOLINT(runtime/explicit)
  Eis(const Rat& r) : re(r), om(0) {}      // NOLINT(runtime/explicit)
  Eis(Rat r, Rat o) : re(std::move(r)), om(std::move(o)) {}

  bool is_zero() const { return re == 0 && om == 0; }
  bool is_rational() const { return om == 0; }

  Eis operator-() const { return Eis(-re, -om); }
  Eis& operator+=(const Eis& b) {
    re += b.re;
    om += b.om;
    return *this;
  }
  Eis& operator-=(const Eis& b) {
    re -= b.re;
    om -= b.om;
    return *this;
  }
  friend Eis operator+(Eis a, const Eis& b) { return a += b; }
  friend Eis operator-(Eis a, const Eis& b) { return a -= b; }

  // (a+bw)(c+dw) = ac - bd + (ad + bc - bd)w
  friend Eis operator*(const Eis& a, const Eis& b) {
    if (a.om == 0 && b.om == 0) return Eis(a.re * b.re, Rat(0));
    Rat bd = a.om * b.om;
    return Eis(a.re * b.re - bd, a.re * b.om + a.om * b.re - bd);
  }
  Eis& operator*=(const Eis& b) { return *this = *this * b; }

  friend bool operator==(const Eis& a, const Eis& b) {
    return a.re == b.re && a.om == b.om;
  }
  friend bool operator!=(const Eis& a, const Eis& b) { return !(a == b); }

  // multiplicative inverse; the norm a^2 - ab + b^2 vanishes only at 0
  Eis inv() const {
    if (is_zero()) throw Error("division by zero in Q(w)");
    Rat n = re * re - re * om + om * om;
    return Eis((re - om) / n, -om / n);
  }

  std::string str() const;
};

inline Eis er_mul(const Eis& a, const Eis& b) { return a * b; }
inline Eis er_inv(const Eis& a) { return a.inv(); }

// w^j for any integer j (negative allowed)
inline Eis omega_pow(long long j) {
  long long m = ((j % 3) + 3) % 3;
  if (m == 0) return Eis(1);
  if (m == 1) return Eis(Rat(0), Rat(1));
  return Eis(Rat(-1), Rat(-1));
}

inline std::string Eis::str() const {
  if (om == 0) return re.get_str();
  std::string w;
  if (om == 1)
    w = "w";
  else if (om == -1)
    w = "-w";
  else
    w = om.get_str() + "*w";
  if (re == 0) return w;
  if (om > 0) return re.get_str() + "+" + (om == 1 ? "w" : om.get_str() + "*w");
  return re.get_str() + "-" + (om == -1 ? "w" : Rat(-om).get_str() + "*w");
}

}  // namespace qrr
