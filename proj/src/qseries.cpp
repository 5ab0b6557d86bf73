#include "qrr/qseries.hpp"

#include <algorithm>
#include <sstream>

namespace qrr {

namespace {
QSeries::sexp clamp_exact(QSeries::sexp t) {
  return t >= QSeries::kExact ? QSeries::kExact : t;
}
}  // namespace

void QSeries::normalize() {
  // drop anything at or above the truncation bound
  if ((sexp)c_.size() > trunc_ - min_) c_.resize(std::max<sexp>(0, trunc_ - min_));
  size_t lo = 0;
  while (lo < c_.size() && c_[lo].is_zero()) ++lo;
  size_t hi = c_.size();
  while (hi > lo && c_[hi - 1].is_zero()) --hi;
  if (lo > 0 || hi < c_.size()) {
    c_ = std::vector<Eis>(c_.begin() + lo, c_.begin() + hi);
  }
  min_ += (sexp)lo;
  if (c_.empty()) {
    trunc_ = trunc_ >= kExact ? kExact : ceil_div(trunc_, scale_);
    min_ = trunc_;
    scale_ = 1;
    return;
  }
  // reduce the scale by the gcd of all live exponents
  long long g = scale_;
  for (size_t i = 0; i < c_.size() && g > 1; ++i)
    if (!c_[i].is_zero()) g = gcd_ll(g, min_ + (sexp)i);
  if (g > 1) {
    std::vector<Eis> nc((c_.size() - 1) / g + 1);
    for (size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) nc[i / g] = c_[i];
    c_ = std::move(nc);
    min_ /= g;
    trunc_ = trunc_ >= kExact ? kExact : ceil_div(trunc_, g);
    scale_ = (int)(scale_ / g);
  }
}

QSeries QSeries::rescaled(int new_scale) const {
  if (new_scale == scale_) return *this;
  long long k = new_scale / scale_;
  QSeries r;
  r.scale_ = new_scale;
  r.min_ = min_ >= kExact ? kExact : min_ * k;
  r.trunc_ = trunc_ >= kExact ? kExact : trunc_ * k;
  if (!c_.empty()) {
    r.c_.assign((c_.size() - 1) * k + 1, Eis());
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i * k] = c_[i];
  }
  return r;
}

int QSeries::common_scale(const QSeries& a, const QSeries& b) {
  return (int)lcm_ll(a.scale_, b.scale_);
}

QSeries QSeries::zero(int scale, sexp trunc) {
  QSeries r;
  r.scale_ = scale;
  r.min_ = r.trunc_ = clamp_exact(trunc);
  r.normalize();
  return r;
}

QSeries QSeries::constant(const Eis& c) {
  QSeries r;
  if (c.is_zero()) return r;
  r.scale_ = 1;
  r.min_ = 0;
  r.trunc_ = kExact;
  r.c_ = {c};
  return r;
}

QSeries QSeries::monomial(const Eis& c, const Rat& exp) {
  if (c.is_zero()) return QSeries();
  QSeries r;
  r.scale_ = (int)rat_den_ll(exp);
  r.min_ = rat_num_ll(exp);
  r.trunc_ = kExact;
  r.c_ = {c};
  return r;
}

QSeries QSeries::from_coeffs(int scale, sexp lo, std::vector<Eis> coeffs, sexp trunc) {
  QSeries r;
  r.scale_ = scale;
  r.min_ = lo;
  r.trunc_ = clamp_exact(trunc);
  r.c_ = std::move(coeffs);
  r.normalize();
  return r;
}

size_t QSeries::terms() const {
  size_t n = 0;
  for (const auto& c : c_)
    if (!c.is_zero()) ++n;
  return n;
}

int QSeries::order_q() const {
  if (trunc_ >= kExact) return 1 << 30;
  return (int)floor_div(trunc_, scale_);
}

Eis QSeries::coeff_scaled(sexp e) const {
  if (e < min_ || e - min_ >= (sexp)c_.size()) return Eis();
  return c_[e - min_];
}

Eis QSeries::coeff(const Rat& e) const {
  long long den = rat_den_ll(e);
  if (scale_ % den != 0) return Eis();
  return coeff_scaled(rat_num_ll(e) * (scale_ / den));
}

QSeries QSeries::operator-() const {
  QSeries r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
  int L = QSeries::common_scale(a, b);
  QSeries x = a.rescaled(L), y = b.rescaled(L);
  QSeries r;
  r.scale_ = L;
  r.trunc_ = clamp_exact(std::min(x.trunc_, y.trunc_));
  if (x.c_.empty() && y.c_.empty()) {
    r.min_ = r.trunc_;
    r.normalize();
    return r;
  }
  QSeries::sexp lo = std::min(x.c_.empty() ? y.min_ : x.min_,
                              y.c_.empty() ? x.min_ : y.min_);
  QSeries::sexp hi = std::max(x.min_ + (QSeries::sexp)x.c_.size(),
                              y.min_ + (QSeries::sexp)y.c_.size());
  hi = std::min(hi, r.trunc_);
  if (hi <= lo) {
    r.min_ = r.trunc_;
    r.normalize();
    return r;
  }
  r.min_ = lo;
  r.c_.assign(hi - lo, Eis());
  for (size_t i = 0; i < x.c_.size(); ++i) {
    QSeries::sexp e = x.min_ + (QSeries::sexp)i;
    if (e < hi) r.c_[e - lo] += x.c_[i];
  }
  for (size_t i = 0; i < y.c_.size(); ++i) {
    QSeries::sexp e = y.min_ + (QSeries::sexp)i;
    if (e < hi) r.c_[e - lo] += y.c_[i];
  }
  r.normalize();
  return r;
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries operator*(const QSeries& a, const QSeries& b) {
  return a.mul_cap(b, QSeries::kExact);
}

QSeries QSeries::mul_cap(const QSeries& b, long long cap_q) const {
  int L = common_scale(*this, b);
  QSeries x = rescaled(L), y = b.rescaled(L);
  QSeries r;
  r.scale_ = L;
  sexp t = kExact;
  if (x.trunc_ < kExact) t = std::min(t, x.trunc_ + y.min_);
  if (y.trunc_ < kExact) t = std::min(t, y.trunc_ + x.min_);
  if (cap_q < kExact) t = std::min(t, cap_q * L);
  r.trunc_ = clamp_exact(t);
  if (x.c_.empty() || y.c_.empty()) {
    r.min_ = r.trunc_;
    r.normalize();
    return r;
  }
  sexp lo = x.min_ + y.min_;
  sexp span = std::min<sexp>(r.trunc_ - lo, (sexp)(x.c_.size() + y.c_.size()) - 1);
  if (span <= 0) {
    r.min_ = r.trunc_;
    r.normalize();
    return r;
  }
  r.min_ = lo;
  r.c_.assign(span, Eis());
  for (size_t i = 0; i < x.c_.size(); ++i) {
    if (x.c_[i].is_zero()) continue;
    size_t jmax = std::min(y.c_.size(), (size_t)std::max<sexp>(0, span - (sexp)i));
    const Eis& xi = x.c_[i];
    bool xi_rat = xi.om == 0;
    for (size_t j = 0; j < jmax; ++j) {
      const Eis& yj = y.c_[j];
      if (yj.is_zero()) continue;
      Eis& dst = r.c_[i + j];
      if (xi_rat && yj.om == 0) {
        dst.re += xi.re * yj.re;
      } else {
        dst += xi * yj;
      }
    }
  }
  r.normalize();
  return r;
}

QSeries QSeries::inv(long long order_q) const {
  QSeries a = *this;
  a.normalize();
  if (a.c_.empty()) throw Error("non-invertible series (zero to truncation)");
  if (a.trunc_ >= kExact && a.c_.size() == 1)
    return monomial(a.c_[0].inv(), rat(-a.min_, a.scale_));
  sexp m = a.min_;
  sexp t_res = std::min(a.trunc_ >= kExact ? kExact : a.trunc_ - 2 * m,
                        order_q * (sexp)a.scale_);
  QSeries r;
  r.scale_ = a.scale_;
  r.min_ = -m;
  r.trunc_ = clamp_exact(t_res);
  sexp n = r.trunc_ - r.min_;  // unit-part coefficients needed
  if (n <= 0) throw Error("inversion lost all precision");
  if (n > (1LL << 27)) throw Error("inversion window too large");
  Eis c0i = a.c_[0].inv();
  r.c_.assign(n, Eis());
  r.c_[0] = c0i;
  for (sexp k = 1; k < n; ++k) {
    Eis acc;
    sexp jmax = std::min<sexp>(k, (sexp)a.c_.size() - 1);
    for (sexp j = 1; j <= jmax; ++j) {
      if (a.c_[j].is_zero() || r.c_[k - j].is_zero()) continue;
      acc += a.c_[j] * r.c_[k - j];
    }
    if (!acc.is_zero()) r.c_[k] = -(c0i * acc);
  }
  r.normalize();
  return r;
}

QSeries QSeries::div(const QSeries& b, long long order_q) const {
  return mul_cap(b.inv(order_q), order_q);
}

QSeries QSeries::pow_int(long long n, long long order_q) const {
  if (n < 0) return inv(order_q).pow_int(-n, order_q);
  QSeries r = QSeries::constant(Eis(1));
  QSeries base = *this;
  while (n > 0) {
    if (n & 1) r = r.mul_cap(base, order_q);
    n >>= 1;
    if (n > 0) base = base.mul_cap(base, order_q);
  }
  return r;
}

QSeries QSeries::times(const Eis& c) const {
  QSeries r = *this;
  if (c.is_zero()) {
    r.c_.clear();
    r.min_ = r.trunc_;
    r.normalize();
    return r;
  }
  for (auto& x : r.c_) x = x * c;
  return r;
}

QSeries QSeries::shift(const Rat& e) const {
  long long den = rat_den_ll(e);
  int L = (int)lcm_ll(scale_, den);
  QSeries r = rescaled(L);
  sexp se = rat_num_ll(e) * (L / den);
  if (r.min_ < kExact) r.min_ += se;
  if (r.trunc_ < kExact) r.trunc_ += se;
  r.normalize();
  return r;
}

QSeries& QSeries::mul_binom(const Eis& c, const Rat& e) {
  *this = *this - times(c).shift(e);
  return *this;
}

QSeries& QSeries::div_binom(const Eis& c, const Rat& e, long long cap_q) {
  if (e <= 0) throw Error("div_binom requires a positive exponent");
  long long den = rat_den_ll(e);
  int L = (int)lcm_ll(scale_, den);
  QSeries a = rescaled(L);
  sexp se = rat_num_ll(e) * (L / den);
  sexp t = std::min(a.trunc_, cap_q * (sexp)L);
  if (a.c_.empty()) {
    a.trunc_ = clamp_exact(t);
    a.min_ = std::min(a.min_, a.trunc_);
    a.normalize();
    *this = a;
    return *this;
  }
  sexp span = t - a.min_;
  if (span < (sexp)a.c_.size()) span = (sexp)a.c_.size();
  if (span > (1LL << 27)) throw Error("div_binom expansion window too large");
  std::vector<Eis> g(span);
  for (size_t i = 0; i < a.c_.size(); ++i) g[i] = a.c_[i];
  for (sexp i = se; i < span; ++i) {
    if (!g[i - se].is_zero()) g[i] += c * g[i - se];
  }
  a.c_ = std::move(g);
  a.trunc_ = clamp_exact(t);
  a.normalize();
  *this = a;
  return *this;
}

QSeries QSeries::subst_power(const Rat& m) const {
  if (m <= 0) throw Error("subst_power requires a positive exponent multiplier");
  long long p = rat_num_ll(m), r_ = rat_den_ll(m);
  QSeries r;
  r.scale_ = (int)(scale_ * r_);
  r.min_ = min_ >= kExact ? kExact : min_ * p;
  r.trunc_ = trunc_ >= kExact ? kExact : trunc_ * p;
  if (!c_.empty()) {
    r.c_.assign((c_.size() - 1) * p + 1, Eis());
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i * p] = c_[i];
  }
  r.normalize();
  return r;
}

QSeries QSeries::subst_unit_root(int j) const {
  QSeries r = *this;
  for (size_t i = 0; i < r.c_.size(); ++i) {
    if (r.c_[i].is_zero()) continue;
    sexp e = r.min_ + (sexp)i;
    if (e % scale_ != 0)
      throw Error("fractional exponent under root-of-unity substitution");
    long long n = e / scale_;
    r.c_[i] = r.c_[i] * omega_pow((long long)j * n);
  }
  r.normalize();
  return r;
}

QSeries QSeries::extract_arith(long long rres, long long mod) const {
  if (mod <= 0) throw Error("extract_arith requires a positive modulus");
  QSeries r = *this;
  for (size_t i = 0; i < r.c_.size(); ++i) {
    if (r.c_[i].is_zero()) continue;
    sexp e = r.min_ + (sexp)i;
    if (e % scale_ != 0) throw Error("fractional exponent in arithmetic extraction");
    long long n = e / scale_;
    if (((n - rres) % mod + mod) % mod != 0) r.c_[i] = Eis();
  }
  r.normalize();
  return r;
}

QSeries QSeries::derivative_mul_q() const {
  QSeries r = *this;
  for (size_t i = 0; i < r.c_.size(); ++i) {
    sexp e = r.min_ + (sexp)i;
    if (!r.c_[i].is_zero()) r.c_[i] = r.c_[i] * Eis(rat(e, scale_));
  }
  r.normalize();
  return r;
}

QSeries& QSeries::truncate_scaled(sexp t) {
  if (t < trunc_) {
    trunc_ = t;
    normalize();
  }
  return *this;
}

QSeries& QSeries::truncate_q(long long order_q) {
  return truncate_scaled(order_q * (sexp)scale_);
}

std::optional<Mismatch> QSeries::mismatch(const QSeries& a, const QSeries& b) {
  int L = common_scale(a, b);
  QSeries x = a.rescaled(L), y = b.rescaled(L);
  sexp hi = std::min(x.trunc_, y.trunc_);
  if (hi >= kExact) {
    hi = std::max(x.c_.empty() ? -kExact : x.min_ + (sexp)x.c_.size(),
                  y.c_.empty() ? -kExact : y.min_ + (sexp)y.c_.size());
  }
  sexp lo = std::min(x.c_.empty() ? hi : x.min_, y.c_.empty() ? hi : y.min_);
  for (sexp e = lo; e < hi; ++e) {
    Eis cx = x.coeff_scaled(e), cy = y.coeff_scaled(e);
    if (!(cx == cy)) return Mismatch{rat(e, L), cx, cy};
  }
  return std::nullopt;
}

std::optional<Mismatch> QSeries::mismatch_below(const QSeries& a, const QSeries& b,
                                                long long order_q) {
  a.require_order(order_q, "lhs");
  b.require_order(order_q, "rhs");
  QSeries x = a, y = b;
  x.truncate_q(order_q);
  y.truncate_q(order_q);
  int L = common_scale(x, y);
  x = x.rescaled(L);
  y = y.rescaled(L);
  sexp hi = order_q * (sexp)L;
  sexp lo = std::min(x.c_.empty() ? hi : x.min_, y.c_.empty() ? hi : y.min_);
  for (sexp e = lo; e < hi; ++e) {
    Eis cx = x.coeff_scaled(e), cy = y.coeff_scaled(e);
    if (!(cx == cy)) return Mismatch{rat(e, L), cx, cy};
  }
  return std::nullopt;
}

void QSeries::require_order(long long order_q, const std::string& what) const {
  if (trunc_ < order_q * (sexp)scale_)
    throw Error(what + ": series only known below q^" + rat(trunc_, scale_).get_str() +
                ", need q^" + std::to_string(order_q));
}

std::string QSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    const Eis& co = c_[i];
    sexp e = min_ + (sexp)i;
    std::string mag;
    bool neg = false;
    if (co.is_rational()) {
      neg = co.re < 0;
      Rat a = neg ? Rat(-co.re) : co.re;
      if (a != 1 || e == 0) mag = a.get_str();
    } else {
      mag = "(" + co.str() + ")";
      if (e == 0) mag = co.str();
    }
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    os << mag;
    if (e != 0) {
      if (!mag.empty()) os << "*";
      Rat ex = rat(e, scale_);
      if (ex == 1)
        os << "q";
      else if (rat_is_int(ex) && ex > 0)
        os << "q^" << ex.get_str();
      else
        os << "q^(" << ex.get_str() << ")";
    }
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace qrr
