#pragma once
// Constant-term engine.  An integrand is a product of z-dependent factors,
// each expanding to a Laurent polynomial in z whose coefficients are
// truncated q-series; ct_product multiplies them and extracts the z^0 part.
// gr_rhs evaluates the Gasper-Rahman sum-of-residues expansion of the same
// constant term, so the two sides can be compared independently.
#include "qrr/products.hpp"

#include <vector>

namespace qrr {

enum class ZKind { EulerNum, EulerDen, Theta };

// one factor of the integrand, everything in base Q = q^step:
//   EulerNum  (arg z^zpow; Q)_inf        = sum_i (-1)^i Q^(i(i-1)/2) arg^i z^(zpow i) / (Q;Q)_i
//   EulerDen  1/(arg z^zpow; Q)_inf      = sum_j arg^j z^(zpow j) / (Q;Q)_j
//   Theta     sum_k (-1)^k Q^(k(k-1)/2) arg^k z^(zpow k)
//                                        = (Q, arg z^zpow, Q z^-zpow / arg; Q)_inf
struct ZFactor {
  ZKind kind = ZKind::EulerNum;
  MonomialArg arg;
  long long zpow = 1;
  Rat step = Rat(1);
};

// Laurent polynomial in z with truncated q-series coefficients
struct ZLaurent {
  long long zlo = 0;
  std::vector<QSeries> c;  // c[i] is the coefficient of z^(zlo + i)

  bool empty() const { return c.empty(); }
  long long zhi() const { return zlo + static_cast<long long>(c.size()) - 1; }
  const QSeries* at(long long zp) const {
    if (c.empty() || zp < zlo || zp > zhi()) return nullptr;
    return &c[static_cast<size_t>(zp - zlo)];
  }
};

// single factor as a z-Laurent polynomial, q-exponents capped below `order`
ZLaurent zfactor_expand(const ZFactor& f, long long order);

// z^0 coefficient of the product of the factors, correct below `order`;
// factors are folded narrow-first and every partial product is clamped to
// the z-powers that can still reach z^0 through the remaining factors
QSeries ct_product(const std::vector<ZFactor>& fs, long long order);

// parameters of P(z) = prod(a_i z) prod(b_i / z) / (prod(c_i z) prod(d_i / z)),
// all Pochhammer symbols infinite in base Q = q^step
struct GRSpec {
  std::vector<MonomialArg> a, b, c, d;
  Rat step = Rat(1);
};

// sum-of-residues expansion of the z^0 coefficient of P(z): one term per
// c parameter, each an infinite-product prefix times a one-variable series.
// Requires simple poles (no two c's differing by an integer power of Q) and
// C > A, or C = A with prod(a)/prod(c) of positive q-order.
QSeries gr_rhs(const GRSpec& g, long long order);

}  // namespace qrr
