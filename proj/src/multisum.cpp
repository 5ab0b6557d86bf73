#include "qrr/multisum.hpp"

#include <algorithm>
#include <string>

namespace qrr {

namespace {

void check_affine(const AffinePoch& p, int dim, bool denominator) {
  if (p.arg.coeff.is_zero()) throw Error("Pochhammer argument must be nonzero");
  if (p.step <= 0) throw Error("Pochhammer step must be positive");
  if (static_cast<int>(p.len_lin.size()) != dim)
    throw Error("Pochhammer length has wrong arity");
  for (long long a : p.len_lin)
    if (a < 0) throw Error("Pochhammer length must be nondecreasing in each index");
  if (p.len_const < 0) throw Error("Pochhammer length must be nonnegative");
  if (denominator && p.arg.exp <= 0)
    throw Error("denominator Pochhammer needs a positive argument exponent");
}

// minimum of a*x^2 + b*x over integer x >= 0; validate_sum_term guarantees
// b > 0 whenever a == 0, so the quotient below is well defined
Rat axis_min(const Rat& a, const Rat& b) {
  if (b >= 0 || a == 0) return Rat(0);
  long long lo = std::max(0LL, rat_floor_ll(-b / (2 * a)));
  Rat best = a * lo * lo + b * lo;
  Rat up = a * (lo + 1) * (lo + 1) + b * (lo + 1);
  return std::min(best, up);
}

}  // namespace

void validate_sum_term(const SumTerm& t) {
  if (t.dim < 0) throw Error("sum dimension must be nonnegative");
  if (static_cast<int>(t.quad.size()) != t.dim)
    throw Error("quadratic form has wrong shape");
  for (const auto& row : t.quad)
    if (static_cast<int>(row.size()) != t.dim)
      throw Error("quadratic form has wrong shape");
  if (static_cast<int>(t.lin.size()) != t.dim) throw Error("linear part has wrong arity");
  for (int j = 0; j < t.dim; ++j) {
    if (t.quad[j][j] < 0) throw Error("quadratic form needs nonnegative diagonal entries");
    if (t.quad[j][j] == 0 && t.lin[j] <= 0)
      throw Error("axis with no quadratic growth needs a positive linear part");
    for (int l = 0; l < t.dim; ++l) {
      if (t.quad[j][l] != t.quad[l][j]) throw Error("quadratic form must be symmetric");
      if (j != l && t.quad[j][l] < 0)
        throw Error("quadratic form must have nonnegative off-diagonal entries");
    }
  }
  if (!t.sign_lin.empty() && static_cast<int>(t.sign_lin.size()) != t.dim)
    throw Error("sign twist has wrong arity");
  if (!t.omega_lin.empty() && static_cast<int>(t.omega_lin.size()) != t.dim)
    throw Error("omega twist has wrong arity");
  for (const auto& p : t.num_pochs) check_affine(p, t.dim, false);
  for (const auto& p : t.den_pochs) check_affine(p, t.dim, true);
  if (t.prefactor.coeff.is_zero()) throw Error("prefactor must be nonzero");
  for (const auto& p : t.inf_prods) {
    if (p.arg.coeff.is_zero()) throw Error("Pochhammer argument must be nonzero");
    if (p.step <= 0) throw Error("Pochhammer step must be positive");
  }
}

QSeries eval_sum_term(const SumTerm& t, long long order) {
  validate_sum_term(t);
  const int d = t.dim;

  // numerator factors can dip below the tuple exponent by at most delta
  Rat delta(0);
  for (const auto& p : t.num_pochs)
    delta += poch_negative_shift(PochFactor::inf(p.arg, p.step));
  const long long dslack = delta < 0 ? rat_ceil_ll(-delta) : 0;

  const Rat c_eff = t.cst + t.prefactor.exp;

  std::vector<Rat> amin(d);
  Rat amin_total(0);
  for (int j = 0; j < d; ++j) {
    amin[j] = axis_min(t.quad[j][j], t.lin[j]);
    amin_total += amin[j];
  }
  const Rat emin = amin_total + c_eff + delta;  // smallest exponent any term can reach

  // widen the working order so that a negative minimal exponent — whether from
  // the prefactor, the numerator dips, or the infinite products — still covers `order`
  Rat neg(0);
  for (const auto& p : t.inf_prods) neg += poch_negative_shift(p);
  if (emin < 0) neg += emin;
  const long long W = order + (neg < 0 ? rat_ceil_ll(-neg) : 0);

  // smallest per-axis bound past which every tuple exponent clears W
  std::vector<long long> bound(d);
  for (int j = 0; j < d; ++j) {
    Rat rest = amin_total - amin[j] + c_eff + delta;
    long long b = 0;
    while (true) {
      Rat g = t.quad[j][j] * b * b + t.lin[j] * b + rest;
      if (g >= W && t.quad[j][j] * (2 * b + 1) + t.lin[j] >= 0) break;
      if (++b > 2'000'000) throw Error("unbounded enumeration: axis bound not found");
    }
    bound[j] = b;
  }

  long long tabcap = W + dslack + std::max(0LL, -rat_floor_ll(std::min(emin, Rat(0))));

  // incremental tables: num_tab[p][n] = (arg; q^s)_n, den_tab[p][n] = 1/(arg; q^s)_n
  std::vector<std::vector<QSeries>> num_tab(t.num_pochs.size());
  std::vector<std::vector<QSeries>> den_tab(t.den_pochs.size());
  for (auto& tab : num_tab) tab.push_back(QSeries::constant(Eis(1)));
  for (auto& tab : den_tab) tab.push_back(QSeries::constant(Eis(1)));
  auto num_at = [&](size_t p, long long n) -> const QSeries& {
    auto& tab = num_tab[p];
    const auto& ap = t.num_pochs[p];
    while (static_cast<long long>(tab.size()) <= n) {
      QSeries next = tab.back();
      next.mul_binom(ap.arg.coeff, ap.arg.exp + ap.step * (static_cast<long long>(tab.size()) - 1));
      next.truncate_q(tabcap);
      tab.push_back(std::move(next));
    }
    return tab[static_cast<size_t>(n)];
  };
  auto den_at = [&](size_t p, long long n) -> const QSeries& {
    auto& tab = den_tab[p];
    const auto& ap = t.den_pochs[p];
    while (static_cast<long long>(tab.size()) <= n) {
      QSeries next = tab.back();
      next.div_binom(ap.arg.coeff, ap.arg.exp + ap.step * (static_cast<long long>(tab.size()) - 1),
                     tabcap);
      tab.push_back(std::move(next));
    }
    return tab[static_cast<size_t>(n)];
  };

  QSeries acc = QSeries::zero(1, W);
  bool empty = false;
  for (int j = 0; j < d; ++j) empty = empty || bound[j] == 0;
  std::vector<long long> idx(d, 0);
  while (!empty) {
    Rat e = c_eff;
    for (int j = 0; j < d; ++j) {
      e += t.lin[j] * idx[j];
      for (int l = 0; l < d; ++l) e += t.quad[j][l] * idx[j] * idx[l];
    }
    if (e + delta < rat(W)) {
      long long stw = 0, omw = 0;
      if (!t.sign_lin.empty())
        for (int j = 0; j < d; ++j) stw += t.sign_lin[j] * idx[j];
      if (!t.omega_lin.empty())
        for (int j = 0; j < d; ++j) omw += t.omega_lin[j] * idx[j];
      Eis coeff = t.prefactor.coeff * omega_pow(omw);
      if (stw & 1) coeff = -coeff;

      QSeries term = QSeries::monomial(coeff, e);
      for (size_t p = 0; p < t.num_pochs.size(); ++p) {
        long long n = t.num_pochs[p].len_const;
        for (int j = 0; j < d; ++j) n += t.num_pochs[p].len_lin[j] * idx[j];
        term = term.mul_cap(num_at(p, n), W + dslack);
      }
      for (size_t p = 0; p < t.den_pochs.size(); ++p) {
        long long n = t.den_pochs[p].len_const;
        for (int j = 0; j < d; ++j) n += t.den_pochs[p].len_lin[j] * idx[j];
        term = term.mul_cap(den_at(p, n), W + dslack);
      }
      term.truncate_q(W);
      acc = acc + term;
    }

    int j = 0;
    while (j < d && ++idx[j] >= bound[j]) idx[j++] = 0;
    if (j == d) break;
  }

  if (!t.inf_prods.empty())
    acc = acc.mul_cap(poch_product(t.inf_prods, W), W);
  acc.truncate_q(order);
  return acc;
}

QSeries eval_sum_side(const std::vector<SumTerm>& ts, long long order) {
  QSeries acc = QSeries::zero(1, order);
  for (const auto& t : ts) acc = acc + eval_sum_term(t, order);
  return acc;
}

}  // namespace qrr
