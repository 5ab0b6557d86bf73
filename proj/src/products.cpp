#include "qrr/products.hpp"

#include <algorithm>
#include <utility>

namespace qrr {

std::string MonomialArg::str() const {
  std::string qs;
  if (exp == 1) {
    qs = "q";
  } else if (exp != 0) {
    if (rat_is_int(exp) && exp > 0)
      qs = "q^" + rat_str(exp);
    else
      qs = "q^(" + rat_str(exp) + ")";
  }
  if (qs.empty()) return coeff.str();
  if (coeff == Eis(1)) return qs;
  if (coeff == Eis(-1)) return "-" + qs;
  std::string cs = coeff.str();
  if (cs.find_first_of("+-", 1) != std::string::npos) cs = "(" + cs + ")";
  return cs + "*" + qs;
}

Rat poch_negative_shift(const PochFactor& p) {
  Rat neg(0);
  for (long long k = 0;; ++k) {
    if (p.length && k >= *p.length) break;
    Rat e = p.arg.exp + p.step * k;
    if (e >= 0) break;
    neg += e;
  }
  return neg;
}

QSeries poch_expand(const PochFactor& p, long long order) {
  if (p.arg.coeff.is_zero()) throw Error("Pochhammer argument must be nonzero");
  if (p.step <= 0) throw Error("Pochhammer step must be positive");
  if (p.length && *p.length < 0) throw Error("negative Pochhammer length");

  Rat neg = poch_negative_shift(p);
  long long cap = order + (neg < 0 ? rat_ceil_ll(-neg) : 0);
  // a binomial at exponent e only touches exponents >= e + neg, so once
  // e + neg >= order it cannot change anything below the requested order
  Rat skip_at = rat(order) - neg;

  QSeries f = QSeries::constant(Eis(1));
  bool capped = !p.length;  // an infinite product is never exact
  for (long long k = 0;; ++k) {
    if (p.length && k >= *p.length) break;
    Rat e = p.arg.exp + p.step * k;
    if (e >= 0 && e >= skip_at) {
      if (p.length) capped = true;
      break;
    }
    f.mul_binom(p.arg.coeff, e);
    if (f.is_exact() && f.known_zero()) return QSeries();  // hit a vanishing factor
    if (!f.known_zero() &&
        f.min_exp() + static_cast<QSeries::sexp>(f.window().size()) >
            cap * static_cast<QSeries::sexp>(f.scale())) {
      f.truncate_q(cap);
      capped = true;
    }
  }
  if (capped) f.truncate_q(order);
  return f;
}

QSeries poch_product(const std::vector<PochFactor>& ps, long long order) {
  Rat neg(0);
  for (const auto& p : ps) neg += poch_negative_shift(p);
  long long slack = neg < 0 ? rat_ceil_ll(-neg) : 0;

  QSeries f = QSeries::constant(Eis(1));
  for (const auto& p : ps) {
    f = f.mul_cap(poch_expand(p, order + slack), order + slack);
    if (f.is_exact() && f.known_zero()) return QSeries();
  }
  return f;
}

QSeries eta_expand(const EtaQuotient& eq, long long order) {
  QSeries f = QSeries::constant(Eis(1));
  for (const auto& [m, r] : eq) {
    if (m <= 0) throw Error("eta factor needs a positive power of q");
    if (r == 0) continue;
    QSeries em = theta_jtp(MonomialArg(Eis(1), rat(m)), rat(3 * m), order);
    f = f.mul_cap(em.pow_int(r, order), order);
  }
  return f;
}

QSeries theta_jtp(const MonomialArg& x, const Rat& step, long long order) {
  if (x.coeff.is_zero()) throw Error("theta argument must be nonzero");
  if (!(step > 0)) throw Error("theta step must be positive");
  if (!(x.exp > 0 && x.exp < step))
    throw Error("theta argument exponent must lie strictly between 0 and the step");

  const Rat& s = step;
  const Rat& a = x.exp;
  auto expo = [&](long long n) -> Rat { return s * rat(n * (n - 1) / 2) + a * rat(n); };

  std::vector<std::pair<Rat, Eis>> terms;
  Eis cpow(1);
  for (long long n = 0; expo(n) < order; ++n) {
    terms.emplace_back(expo(n), (n & 1) ? -cpow : cpow);
    cpow = cpow * x.coeff;
  }
  Eis ci = x.coeff.inv();
  cpow = ci;
  for (long long n = -1; expo(n) < order; --n) {
    terms.emplace_back(expo(n), (n & 1) ? -cpow : cpow);
    cpow = cpow * ci;
  }

  long long L = 1;
  for (const auto& [e, c] : terms) L = lcm_ll(L, rat_den_ll(e));
  if (terms.empty()) return QSeries::zero(1, order);

  QSeries::sexp lo = rat_scaled(terms.front().first, static_cast<int>(L));
  QSeries::sexp hi = lo;
  for (const auto& [e, c] : terms) {
    QSeries::sexp se = rat_scaled(e, static_cast<int>(L));
    lo = std::min(lo, se);
    hi = std::max(hi, se);
  }
  std::vector<Eis> cs(static_cast<size_t>(hi - lo + 1), Eis(0));
  for (const auto& [e, c] : terms) {
    size_t at = static_cast<size_t>(rat_scaled(e, static_cast<int>(L)) - lo);
    cs[at] = cs[at] + c;  // n and -n-1 can land on the same exponent when 2*exp == step
  }
  return QSeries::from_coeffs(static_cast<int>(L), lo, std::move(cs), order * L);
}

QSeries cubic_cf(int depth, long long order) {
  if (depth < 1) throw Error("continued fraction depth must be at least 1");
  QSeries t = QSeries::constant(Eis(1));
  for (int k = depth; k >= 1; --k) {
    QSeries num = QSeries::monomial(Eis(1), rat(k)) + QSeries::monomial(Eis(1), rat(2 * k));
    t = QSeries::constant(Eis(1)) + num.mul_cap(t.inv(order), order);
  }
  return t.inv(order).shift(Rat(1, 3));
}

int cubic_cf_depth_for(long long order) {
  int d = 1;
  while (static_cast<long long>(d) * (d + 1) / 2 < order + 2) ++d;
  QSeries prev = cubic_cf(d, order);
  for (; d < 4096; ++d) {
    QSeries next = cubic_cf(d + 1, order);
    auto mm = QSeries::mismatch(prev, next);
    if (!mm || mm->exp >= rat(order)) return d + 1;
    prev = std::move(next);
  }
  throw Error("continued fraction convergents failed to stabilise");
}

QSeries cubic_cf_auto(long long order) { return cubic_cf(cubic_cf_depth_for(order), order); }

}  // namespace qrr
