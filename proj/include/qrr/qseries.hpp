#pragma once
// Truncated Laurent series in q^(1/D) over Q(w).
//
// A series stores a scale D, a window of dense coefficients starting at the
// scaled exponent `min_exp`, and a scaled truncation bound `trunc`: every
// coefficient at exponent e/D with e < trunc is known exactly (coefficients
// inside [min_exp, trunc) but past the stored window are exact zeros).
// Exact values (monomials, finite Pochhammer products) carry the sentinel
// truncation kExact, so precision loss only enters where it genuinely must:
// multiplication propagates trunc = min(trunc_a + min_b, trunc_b + min_a)
// and inversion of a series with leading exponent m yields trunc - 2m.
// The scale is reduced by the gcd of all live exponents after every
// operation, so integer-exponent results always land back at D = 1.
#include "qrr/eisenstein.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qrr {

struct Mismatch {
  Rat exp;
  Eis lhs, rhs;
};

class QSeries {
 public:
  using sexp = long long;                    // scaled exponent
  static constexpr sexp kExact = 1LL << 40;  // truncation sentinel

  QSeries() : scale_(1), min_(kExact), trunc_(kExact) {}  // exact zero

  static QSeries zero(int scale, sexp trunc);
  static QSeries constant(const Eis& c);
  static QSeries monomial(const Eis& c, const Rat& exp);
  static QSeries from_coeffs(int scale, sexp lo, std::vector<Eis> coeffs, sexp trunc);

  int scale() const { return scale_; }
  sexp min_exp() const { return min_; }
  sexp trunc() const { return trunc_; }
  bool is_exact() const { return trunc_ >= kExact; }
  bool known_zero() const { return c_.empty(); }
  size_t terms() const;

  Rat min_exp_rat() const { return rat(min_, scale_); }
  int order_q() const;  // largest N with every exponent < N known

  Eis coeff_scaled(sexp e) const;  // 0 off-window
  Eis coeff(const Rat& e) const;
  const std::vector<Eis>& window() const { return c_; }

  QSeries operator-() const;
  friend QSeries operator+(const QSeries& a, const QSeries& b);
  friend QSeries operator-(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const QSeries& a, const QSeries& b);

  // like operator* but results are dropped at or above q^cap_q
  QSeries mul_cap(const QSeries& b, long long cap_q) const;

  // multiplicative inverse, computed out to q^order_q; the leading
  // coefficient must be nonzero ("non-invertible" otherwise)
  QSeries inv(long long order_q) const;
  QSeries div(const QSeries& b, long long order_q) const;
  QSeries pow_int(long long n, long long order_q) const;

  QSeries times(const Eis& c) const;
  QSeries shift(const Rat& e) const;  // multiply by q^e

  // in-place multiply by (1 - c q^e); cheap two-term update
  QSeries& mul_binom(const Eis& c, const Rat& e);
  // in-place divide by (1 - c q^e); requires e > 0, works to q^cap_q
  QSeries& div_binom(const Eis& c, const Rat& e, long long cap_q);

  QSeries subst_power(const Rat& m) const;  // q -> q^m, m > 0
  QSeries subst_unit_root(int j) const;     // coeff of q^n gains w^(jn)
  QSeries extract_arith(long long r, long long mod) const;
  QSeries derivative_mul_q() const;  // q d/dq

  QSeries& truncate_scaled(sexp t);
  QSeries& truncate_q(long long order_q);

  // first disagreement over the common known window (nullopt if equal)
  static std::optional<Mismatch> mismatch(const QSeries& a, const QSeries& b);
  // same, restricted below q^order; throws if either side is too short
  static std::optional<Mismatch> mismatch_below(const QSeries& a, const QSeries& b,
                                                long long order_q);

  void require_order(long long order_q, const std::string& what) const;

  std::string str() const;

 private:
  int scale_;
  sexp min_;
  sexp trunc_;
  std::vector<Eis> c_;  // c_[i] is the coefficient of q^((min_+i)/scale_)

  void normalize();
  QSeries rescaled(int new_scale) const;  // new_scale must be a multiple
  static int common_scale(const QSeries& a, const QSeries& b);
  friend class QSeriesTestAccess;
};

}  // namespace qrr
