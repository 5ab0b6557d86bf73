#include "qrr/ctengine.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace qrr {

namespace {

Eis eis_pow(const Eis& c, long long n) {
  Eis r(1);
  Eis b = n < 0 ? c.inv() : c;
  for (long long k = 0; k < (n < 0 ? -n : n); ++k) r = r * b;
  return r;
}

ZLaurent from_terms(std::map<long long, QSeries>&& terms) {
  ZLaurent r;
  if (terms.empty()) return r;
  r.zlo = terms.begin()->first;
  r.c.assign(static_cast<size_t>(terms.rbegin()->first - r.zlo + 1), QSeries());
  for (auto& [zp, s] : terms) r.c[static_cast<size_t>(zp - r.zlo)] = std::move(s);
  return r;
}

void add_term(std::map<long long, QSeries>& terms, long long zp, QSeries s) {
  auto it = terms.find(zp);
  if (it == terms.end())
    terms.emplace(zp, std::move(s));
  else
    it->second = it->second + s;
}

ZLaurent zl_mul(const ZLaurent& a, const ZLaurent& b, long long order, long long keep_lo,
                long long keep_hi) {
  ZLaurent r;
  if (a.empty() || b.empty()) return r;
  long long lo = std::max(a.zlo + b.zlo, keep_lo);
  long long hi = std::min(a.zhi() + b.zhi(), keep_hi);
  if (lo > hi) return r;
  r.zlo = lo;
  r.c.assign(static_cast<size_t>(hi - lo + 1), QSeries());
  for (long long n = lo; n <= hi; ++n) {
    QSeries acc = QSeries::zero(1, order);
    for (long long j = std::max(a.zlo, n - b.zhi()); j <= std::min(a.zhi(), n - b.zlo); ++j) {
      const QSeries& x = *a.at(j);
      const QSeries& y = *b.at(n - j);
      if (x.known_zero() || y.known_zero()) continue;  // every entry is good below `order`
      acc = acc + x.mul_cap(y, order);
    }
    acc.truncate_q(order);
    r.c[static_cast<size_t>(n - lo)] = std::move(acc);
  }
  return r;
}

}  // namespace

ZLaurent zfactor_expand(const ZFactor& f, long long order) {
  if (f.arg.coeff.is_zero()) throw Error("z-factor argument must be nonzero");
  if (f.step <= 0) throw Error("z-factor step must be positive");
  const Rat& s = f.step;
  const Rat& e = f.arg.exp;
  std::map<long long, QSeries> terms;

  if (f.kind == ZKind::Theta) {
    if (e < 0 || e > s)
      throw Error("theta argument exponent must lie between 0 and the step");
    auto expo = [&](long long k) -> Rat { return s * rat(k * (k - 1) / 2) + e * rat(k); };
    Eis cpow(1);
    for (long long k = 0; expo(k) < order; ++k) {
      add_term(terms, f.zpow * k, QSeries::monomial((k & 1) ? -cpow : cpow, expo(k)));
      cpow = cpow * f.arg.coeff;
    }
    Eis ci = f.arg.coeff.inv();
    cpow = ci;
    for (long long k = -1; expo(k) < order; --k) {
      add_term(terms, f.zpow * k, QSeries::monomial((k & 1) ? -cpow : cpow, expo(k)));
      cpow = cpow * ci;
    }
  } else {
    const bool num = f.kind == ZKind::EulerNum;
    if (num && e < 0) throw Error("Euler numerator argument exponent must be nonnegative");
    if (!num && e <= 0) throw Error("infinite z-support: Euler denominator argument exponent must be positive");
    auto expo = [&](long long i) -> Rat {
      if (num) return s * rat(i * (i - 1) / 2) + e * rat(i);
      return e * rat(i);
    };
    QSeries rec = QSeries::constant(Eis(1));  // 1 / (Q;Q)_i
    Eis cpow(1);
    for (long long i = 0; expo(i) < order; ++i) {
      if (i > 0) {
        rec.div_binom(Eis(1), s * i, order);
        cpow = cpow * f.arg.coeff;
      }
      Eis cf = (num && (i & 1)) ? -cpow : cpow;
      QSeries t = rec.times(cf).shift(expo(i));
      t.truncate_q(order);
      add_term(terms, f.zpow * i, std::move(t));
    }
  }

  for (auto& [zp, t] : terms) t.truncate_q(order);
  return from_terms(std::move(terms));
}

QSeries ct_product(const std::vector<ZFactor>& fs, long long order) {
  long long thetas = 0;
  for (const auto& f : fs) thetas += f.kind == ZKind::Theta ? 1 : 0;
  if (thetas != 1)
    throw Error("constant-term product needs exactly one theta factor");

  std::vector<ZLaurent> zl;
  zl.reserve(fs.size());
  for (const auto& f : fs) zl.push_back(zfactor_expand(f, order));

  std::vector<size_t> idx(zl.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](size_t x, size_t y) {
    return zl[x].c.size() < zl[y].c.size();
  });

  ZLaurent p;
  p.zlo = 0;
  p.c = {QSeries::constant(Eis(1))};
  for (size_t k = 0; k < idx.size(); ++k) {
    long long rem_lo = 0, rem_hi = 0;
    for (size_t l = k + 1; l < idx.size(); ++l) {
      const ZLaurent& z = zl[idx[l]];
      if (z.empty()) {
        rem_lo = rem_hi = 0;  // an empty factor annihilates everything anyway
        break;
      }
      rem_lo += z.zlo;
      rem_hi += z.zhi();
    }
    p = zl_mul(p, zl[idx[k]], order, -rem_hi, -rem_lo);
    if (p.empty()) break;
  }

  const QSeries* z0 = p.at(0);
  QSeries r = z0 ? *z0 : QSeries::zero(1, order);
  r.truncate_q(order);
  r.require_order(order, "constant term");
  return r;
}

namespace {

long long ceil0(const Rat& x) { return x > 0 ? rat_ceil_ll(x) : 0; }

// smallest value of the quadratic q*n(n+1)/2 + l*n over integers n >= 0
Rat nsum_exp_min(const Rat& q2, const Rat& l) {
  if (q2 == 0) return std::min(Rat(0), l);  // linear; caller ensures l > 0 then
  Rat a = q2 / 2, b = q2 / 2 + l;
  long long v = std::max(0LL, rat_floor_ll(-b / (2 * a)));
  Rat best(0);
  for (long long n = std::max(0LL, v - 1); n <= v + 2; ++n)
    best = std::min(best, Rat(a * rat(n * n) + b * rat(n)));
  return best;
}

bool is_int_multiple(const Rat& x, const Rat& s) { return rat_is_int(x / s); }

}  // namespace

QSeries gr_rhs(const GRSpec& g, long long order) {
  const Rat& s = g.step;
  if (s <= 0) throw Error("base exponent must be positive");
  const long long A = static_cast<long long>(g.a.size());
  const long long C = static_cast<long long>(g.c.size());
  if (C < 1) throw Error("sum-of-residues expansion needs at least one c parameter");
  for (const auto* lst : {&g.a, &g.b, &g.c, &g.d})
    for (const auto& m : *lst)
      if (m.coeff.is_zero()) throw Error("parameters must be nonzero");

  const long long K = C - A;
  if (K < 0) throw Error("formal divergence: more a than c parameters");
  MonomialArg M(Eis(1), Rat(0));
  for (const auto& m : g.a) M = M.times(m);
  for (const auto& m : g.c) M = M.div(m);
  if (K == 0 && M.exp <= 0)
    throw Error("formal divergence: prod(a)/prod(c) needs positive q-order");

  for (size_t u = 0; u < g.c.size(); ++u)
    for (size_t v = u + 1; v < g.c.size(); ++v)
      if (g.c[u].coeff == g.c[v].coeff && is_int_multiple(g.c[u].exp - g.c[v].exp, s))
        throw Error("pole collision: two c parameters differ by an integer power of the base");

  const MonomialArg base(Eis(1), s);
  QSeries total = QSeries::zero(1, order);

  for (size_t t = 0; t < g.c.size(); ++t) {
    const MonomialArg& ct = g.c[t];

    std::vector<MonomialArg> num_n, den_n;  // (x;Q)_n parameter lists
    for (const auto& d : g.d) num_n.push_back(d.times(ct));
    for (const auto& a : g.a) num_n.push_back(base.times(ct).div(a));
    den_n.push_back(base);
    for (const auto& b : g.b) den_n.push_back(b.times(ct));
    for (size_t u = 0; u < g.c.size(); ++u)
      if (u != t) den_n.push_back(base.times(ct).div(g.c[u]));
    for (const auto& x : den_n) {
      if (x.exp < 0)
        throw Error("denominator parameter with negative exponent in residue sum");
      if (x.exp == 0 && x.coeff == Eis(1))
        throw Error("denominator parameter collides with 1");
    }

    std::vector<PochFactor> pre_num, pre_den;
    for (const auto& b : g.b) pre_num.push_back(PochFactor::inf(b.times(ct), s));
    for (const auto& a : g.a) pre_num.push_back(PochFactor::inf(a.div(ct), s));
    pre_den.push_back(PochFactor::inf(base, s));
    for (const auto& d : g.d) {
      MonomialArg x = d.times(ct);
      if (x.coeff == Eis(1) && x.exp <= 0 && is_int_multiple(x.exp, s))
        throw Error("pole collision: a d parameter meets a c pole");
      pre_den.push_back(PochFactor::inf(x, s));
    }
    for (size_t u = 0; u < g.c.size(); ++u)
      if (u != t) pre_den.push_back(PochFactor::inf(g.c[u].div(ct), s));

    Rat delta(0);
    for (const auto& x : num_n) delta += poch_negative_shift(PochFactor::inf(x, s));
    Rat m_px(0), m_py(0);
    for (const auto& p : pre_num) m_px += poch_negative_shift(p);
    for (const auto& p : pre_den) m_py += poch_negative_shift(p);

    const Rat lin = K * ct.exp + M.exp;
    const Rat exp_min = nsum_exp_min(s * K, lin);
    const Rat m_ns = exp_min + delta;
    const long long Wn = order + ceil0(-m_px);
    const long long Wr = Wn + ceil0(-exp_min);  // ratio window before the monomial shift
    const long long Wp = order + ceil0(-m_ns) + ceil0(-m_px);

    // one-variable series: sum over n of the Pochhammer ratio times
    // (-ct Q^((n+1)/2))^(nK) (prod a / prod c)^n
    const Eis stepc = ((K & 1) ? -Eis(1) : Eis(1)) * eis_pow(ct.coeff, K) * M.coeff;
    auto expC = [&](long long n) -> Rat { return s * rat(K * n * (n + 1) / 2) + lin * rat(n); };
    QSeries nsum = QSeries::zero(1, Wn);
    QSeries r = QSeries::constant(Eis(1));
    Eis cpow(1);
    for (long long n = 0;; ++n) {
      if (expC(n) + delta >= rat(Wn) && expC(n + 1) >= expC(n)) break;
      if (n > 0) {
        for (const auto& x : num_n) r.mul_binom(x.coeff, x.exp + s * (n - 1));
        for (const auto& x : den_n) {
          Rat ex = x.exp + s * (n - 1);
          if (ex > 0)
            r.div_binom(x.coeff, ex, Wr);
          else
            r = r.times((Eis(1) - x.coeff).inv());
        }
        r.truncate_q(Wr);
        cpow = cpow * stepc;
        if (r.known_zero() && r.is_exact()) break;
      }
      QSeries term = r.times(cpow).shift(expC(n));
      term.truncate_q(Wn);
      nsum = nsum + term;
    }

    QSeries px = poch_product(pre_num, Wp);
    QSeries py = poch_product(pre_den, Wp);
    QSeries prefix = px.mul_cap(py.inv(Wp), Wp);
    total = total + prefix.mul_cap(nsum, order);
  }

  total.truncate_q(order);
  total.require_order(order, "residue sum");
  return total;
}

}  // namespace qrr
