#pragma once
// Infinite-product building blocks: q-Pochhammer symbols with monomial
// arguments, eta-style quotients prod (q^m;q^m)_inf^r, the Jacobi triple
// product theta expansion, and the Ramanujan cubic continued fraction.
#include "qrr/qseries.hpp"

#include <optional>
#include <vector>

namespace qrr {

// c * q^e with c a unit-ish nonzero Q(w) scalar and e rational
struct MonomialArg {
  Eis coeff;
  Rat exp;

  MonomialArg() : coeff(1), exp(0) {}
  MonomialArg(Eis c, Rat e) : coeff(std::move(c)), exp(std::move(e)) {}

  MonomialArg times(const MonomialArg& o) const {
    return MonomialArg(coeff * o.coeff, exp + o.exp);
  }
  MonomialArg div(const MonomialArg& o) const {
    return MonomialArg(coeff * o.coeff.inv(), exp - o.exp);
  }
  QSeries series() const { return QSeries::monomial(coeff, exp); }
  std::string str() const;
};

// (arg; q^step)_length, infinite when length is empty
struct PochFactor {
  MonomialArg arg;
  Rat step;
  std::optional<long long> length;

  static PochFactor finite(MonomialArg a, Rat s, long long n) {
    return PochFactor{std::move(a), std::move(s), n};
  }
  static PochFactor inf(MonomialArg a, Rat s) {
    return PochFactor{std::move(a), std::move(s), std::nullopt};
  }
};

// sum of the negative exponents among the binomial factors of p, i.e. the
// lowest exponent its expansion can reach (0 for ordinary arguments)
Rat poch_negative_shift(const PochFactor& p);

// expands the product to all exponents below `order`; finite lengths give
// exact Laurent polynomials (possibly capped), infinite ones require step > 0
QSeries poch_expand(const PochFactor& p, long long order);

// convenience: product of several Pochhammer factors
QSeries poch_product(const std::vector<PochFactor>& ps, long long order);

// prod over (m, r) of (q^m; q^m)_inf^r
using EtaQuotient = std::vector<std::pair<long long, long long>>;
QSeries eta_expand(const EtaQuotient& eq, long long order);

// sum_{n in Z} (-1)^n q^(step*n(n-1)/2) x^n  =  (q^s, x, q^s/x; q^s)_inf
// for a pure monomial x with 0 < exp(x) < step
QSeries theta_jtp(const MonomialArg& x, const Rat& step, long long order);

// depth-d convergent of q^(1/3) / (1 + (q+q^2)/(1 + (q^2+q^4)/(1 + ...)))
QSeries cubic_cf(int depth, long long order);
// smallest depth whose convergent is stable below q^order, found by
// comparing consecutive convergents
int cubic_cf_depth_for(long long order);
QSeries cubic_cf_auto(long long order);

}  // namespace qrr
