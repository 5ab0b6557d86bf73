#pragma once
// Parameterized and randomized identity suites shared by the unit tests and
// the acceptance runner.  Each suite returns ok plus a one-line detail (the
// first failing case when not ok), so callers can assert and report uniformly.
#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qrr/ctengine.hpp"
#include "qrr/expr.hpp"
#include "qrr/multisum.hpp"
#include "qrr/prodfit.hpp"
#include "qrr/products.hpp"

namespace props {

struct Result {
  bool ok = true;
  std::string detail;
};

inline Result fail(std::string d) { return Result{false, std::move(d)}; }
inline Result pass(std::string d) { return Result{true, std::move(d)}; }

inline std::string mm_str(const qrr::Mismatch& m) {
  return "first mismatch at q^" + qrr::rat_str(m.exp) + ": " + m.lhs.str() + " vs " + m.rhs.str();
}

// write c as (-1)^sgn * w^j when possible (all units used by the suites)
inline bool unit_split(const qrr::Eis& c, int& sgn, int& j) {
  for (int s = 0; s < 2; ++s)
    for (int k = 0; k < 3; ++k) {
      qrr::Eis v = qrr::omega_pow(k);
      if ((s ? -v : v) == c) {
        sgn = s;
        j = k;
        return true;
      }
    }
  return false;
}

// --- Jacobi triple product: theta series vs three-factor Pochhammer product

inline Result jtp_random(int count, long long order, unsigned seed = 20260814u) {
  using namespace qrr;
  std::mt19937 rng(seed);
  const std::vector<Eis> coeffs = {Eis(1),           Eis(-1),
                                   Eis(2),           Eis(rat(-1, 2)),
                                   omega_pow(1),     Eis(rat(1), rat(1))};
  for (int t = 0; t < count; ++t) {
    long long snum = 1 + static_cast<long long>(rng() % 4);
    long long den = 1 + static_cast<long long>(rng() % 3);
    if (snum * den < 2) den = 2;  // leave room for 0 < e < step
    long long num = 1 + static_cast<long long>(rng() % (snum * den - 1));
    Rat step = rat(snum);
    MonomialArg x(coeffs[rng() % coeffs.size()], rat(num, den));
    MonomialArg qs(Eis(1), step);
    QSeries lhs = theta_jtp(x, step, order);
    QSeries rhs = poch_product({PochFactor::inf(qs, step), PochFactor::inf(x, step),
                                PochFactor::inf(qs.div(x), step)},
                               order);
    auto mm = QSeries::mismatch_below(lhs, rhs, order);
    if (mm)
      return fail("triple product at x=" + x.str() + ", step " + rat_str(step) + ": " +
                  mm_str(*mm));
  }
  return pass(std::to_string(count) + " random theta factorizations agree below q^" +
              std::to_string(order));
}

// --- the two Euler expansions at monomial arguments

struct MonoCase {
  qrr::MonomialArg z;
  int sgn = 0, j = 0;  // z.coeff = (-1)^sgn w^j
};

inline std::vector<MonoCase> mono_cases(std::initializer_list<qrr::MonomialArg> args) {
  std::vector<MonoCase> out;
  for (const auto& a : args) {
    MonoCase c{a, 0, 0};
    if (!unit_split(a.coeff, c.sgn, c.j)) throw qrr::Error("case coefficient is not a unit");
    out.push_back(c);
  }
  return out;
}

inline Result euler_first(long long order) {
  using namespace qrr;
  for (const auto& z : mono_cases({MonomialArg(Eis(1), rat(1)), MonomialArg(Eis(1), rat(2)),
                                   MonomialArg(Eis(-1), rat(1)),
                                   MonomialArg(omega_pow(1), rat(1)),
                                   MonomialArg(Eis(-1), rat(1, 2))})) {
    SumTerm t;
    t.dim = 1;
    t.quad = {{rat(1, 2)}};
    t.lin = {z.z.exp - rat(1, 2)};
    t.sign_lin = {z.sgn};
    t.omega_lin = {z.j};
    t.den_pochs = {AffinePoch{MonomialArg(Eis(1), rat(1)), rat(1), {1}, 0}};
    QSeries lhs = eval_sum_term(t, order);
    QSeries rhs = poch_expand(PochFactor::inf(MonomialArg(-z.z.coeff, z.z.exp), rat(1)), order);
    auto mm = QSeries::mismatch_below(lhs, rhs, order);
    if (mm) return fail("binomial theta expansion at z=" + z.z.str() + ": " + mm_str(*mm));
  }
  return pass("sum q^(n(n-1)/2) z^n/(q;q)_n = (-z;q)_inf at 5 arguments below q^" +
              std::to_string(order));
}

inline Result euler_second(long long order) {
  using namespace qrr;
  for (const auto& z : mono_cases({MonomialArg(Eis(1), rat(1)), MonomialArg(Eis(1), rat(2)),
                                   MonomialArg(Eis(-1), rat(1)),
                                   MonomialArg(omega_pow(1), rat(1)),
                                   MonomialArg(Eis(-1), rat(3))})) {
    SumTerm t;
    t.dim = 1;
    t.quad = {{rat(0)}};
    t.lin = {z.z.exp};
    t.sign_lin = {z.sgn};
    t.omega_lin = {z.j};
    t.den_pochs = {AffinePoch{MonomialArg(Eis(1), rat(1)), rat(1), {1}, 0}};
    QSeries lhs = eval_sum_term(t, order);
    QSeries rhs = poch_expand(PochFactor::inf(z.z, rat(1)), order + 2).inv(order);
    auto mm = QSeries::mismatch_below(lhs, rhs, order);
    if (mm) return fail("geometric Pochhammer expansion at z=" + z.z.str() + ": " + mm_str(*mm));
  }
  return pass("sum z^n/(q;q)_n = 1/(z;q)_inf at 5 arguments below q^" + std::to_string(order));
}

// --- q-binomial theorem: sum (a;q)_n z^n/(q;q)_n = (a z;q)_inf/(z;q)_inf

inline Result q_binomial(long long order) {
  using namespace qrr;
  const std::vector<std::pair<MonomialArg, MonomialArg>> cases = {
      {MonomialArg(Eis(-1), rat(1)), MonomialArg(Eis(1), rat(1))},
      {MonomialArg(Eis(1), rat(2)), MonomialArg(Eis(1), rat(1))},
      {MonomialArg(omega_pow(1), rat(1)), MonomialArg(Eis(1), rat(2))},
      {MonomialArg(Eis(-1), rat(0)), MonomialArg(Eis(1), rat(1))},
      {MonomialArg(Eis(-1), rat(-1)), MonomialArg(Eis(1), rat(2))},
  };
  for (const auto& [a, z] : cases) {
    int sgn = 0, j = 0;
    if (!unit_split(z.coeff, sgn, j)) return fail("bad case");
    SumTerm t;
    t.dim = 1;
    t.quad = {{rat(0)}};
    t.lin = {z.exp};
    t.sign_lin = {sgn};
    t.omega_lin = {j};
    t.num_pochs = {AffinePoch{a, rat(1), {1}, 0}};
    t.den_pochs = {AffinePoch{MonomialArg(Eis(1), rat(1)), rat(1), {1}, 0}};
    QSeries lhs = eval_sum_term(t, order);
    QSeries rhs = poch_expand(PochFactor::inf(a.times(z), rat(1)), order + 2)
                      .mul_cap(poch_expand(PochFactor::inf(z, rat(1)), order + 2).inv(order), order);
    auto mm = QSeries::mismatch_below(lhs, rhs, order);
    if (mm)
      return fail("q-binomial theorem at a=" + a.str() + ", z=" + z.str() + ": " + mm_str(*mm));
  }
  return pass("q-binomial theorem at 5 parameter pairs below q^" + std::to_string(order));
}

// --- Heine/Euler transformation of 2phi1

inline qrr::QSeries phi21(const qrr::MonomialArg& a, const qrr::MonomialArg& b,
                          const qrr::MonomialArg& c, const qrr::MonomialArg& t,
                          long long order) {
  using namespace qrr;
  int sgn = 0, j = 0;
  if (!unit_split(t.coeff, sgn, j)) throw Error("series argument coefficient is not a unit");
  SumTerm m;
  m.dim = 1;
  m.quad = {{rat(0)}};
  m.lin = {t.exp};
  m.sign_lin = {sgn};
  m.omega_lin = {j};
  m.num_pochs = {AffinePoch{a, rat(1), {1}, 0}, AffinePoch{b, rat(1), {1}, 0}};
  m.den_pochs = {AffinePoch{MonomialArg(Eis(1), rat(1)), rat(1), {1}, 0},
                 AffinePoch{c, rat(1), {1}, 0}};
  return eval_sum_term(m, order);
}

inline Result heine(long long order) {
  using namespace qrr;
  struct Case {
    MonomialArg a, b, c, t;
  };
  const std::vector<Case> cases = {
      {MonomialArg(Eis(1), rat(1)), MonomialArg(Eis(1), rat(2)), MonomialArg(Eis(1), rat(3)),
       MonomialArg(Eis(1), rat(1))},
      {MonomialArg(Eis(-1), rat(1)), MonomialArg(Eis(1), rat(1)), MonomialArg(Eis(1), rat(2)),
       MonomialArg(Eis(1), rat(1))},
      {MonomialArg(omega_pow(1), rat(1)), MonomialArg(Eis(1), rat(2)),
       MonomialArg(Eis(1), rat(3)), MonomialArg(Eis(1), rat(2))},
  };
  for (const auto& cs : cases) {
    MonomialArg tp = cs.a.times(cs.b).times(cs.t).div(cs.c);  // a b t / c
    QSeries lhs = phi21(cs.a, cs.b, cs.c, cs.t, order);
    QSeries prefix =
        poch_expand(PochFactor::inf(tp, rat(1)), order + 2)
            .mul_cap(poch_expand(PochFactor::inf(cs.t, rat(1)), order + 2).inv(order), order);
    QSeries rhs = prefix.mul_cap(phi21(cs.c.div(cs.a), cs.c.div(cs.b), cs.c, tp, order), order);
    auto mm = QSeries::mismatch_below(lhs, rhs, order);
    if (mm)
      return fail("Euler transformation at (a,b,c,t)=(" + cs.a.str() + "," + cs.b.str() + "," +
                  cs.c.str() + "," + cs.t.str() + "): " + mm_str(*mm));
  }
  return pass("Euler transformation of 2phi1 at 3 specializations below q^" +
              std::to_string(order));
}

// --- Lebesgue identity: sum (a;q)_n q^(n(n+1)/2)/(q;q)_n = (aq;q^2)_inf (-q;q)_inf

inline Result lebesgue(long long order) {
  using namespace qrr;
  const std::vector<MonomialArg> as = {
      MonomialArg(Eis(1), rat(1)), MonomialArg(Eis(1), rat(2)), MonomialArg(Eis(-1), rat(1)),
      MonomialArg(Eis(-1), rat(-1)), MonomialArg(omega_pow(1), rat(1))};
  for (const auto& a : as) {
    SumTerm t;
    t.dim = 1;
    t.quad = {{rat(1, 2)}};
    t.lin = {rat(1, 2)};
    t.num_pochs = {AffinePoch{a, rat(1), {1}, 0}};
    t.den_pochs = {AffinePoch{MonomialArg(Eis(1), rat(1)), rat(1), {1}, 0}};
    QSeries lhs = eval_sum_term(t, order);
    QSeries rhs = poch_product({PochFactor::inf(MonomialArg(a.coeff, a.exp + 1), rat(2)),
                                PochFactor::inf(MonomialArg(Eis(-1), rat(1)), rat(1))},
                               order);
    auto mm = QSeries::mismatch_below(lhs, rhs, order);
    if (mm) return fail("Lebesgue identity at a=" + a.str() + ": " + mm_str(*mm));
  }
  return pass("Lebesgue identity at 5 arguments below q^" + std::to_string(order));
}

// --- random constant-term integrands vs their sum-of-residues expansion

inline Result gr_ct_random(int count, long long order, unsigned seed = 977u) {
  using namespace qrr;
  std::mt19937 rng(seed);
  int done = 0;
  for (int attempts = 0; done < count; ++attempts) {
    if (attempts > 60 * count) return fail("rejection sampling failed to find simple poles");
    long long s = 2 + static_cast<long long>(rng() % 2);
    int extra_a = static_cast<int>(rng() % 2);
    int n_c = extra_a + 2;  // one more pole parameter than numerator parameters
    auto coin = [&]() { return (rng() % 2) ? Eis(1) : Eis(-1); };

    std::vector<MonomialArg> as = {MonomialArg(Eis(1), rat(s))};
    for (int i = 0; i < extra_a; ++i)
      as.emplace_back(coin(), rat(1 + static_cast<long long>(rng() % s)));
    std::vector<MonomialArg> cs;
    for (int i = 0; i < n_c; ++i)
      cs.emplace_back(coin(), rat(2 + static_cast<long long>(rng() % 3), 2));

    bool simple = true;  // no two poles may differ by an integer power of the base
    for (size_t i = 0; i < cs.size() && simple; ++i)
      for (size_t k = i + 1; k < cs.size() && simple; ++k)
        if (cs[i].coeff == cs[k].coeff && rat_is_int((cs[i].exp - cs[k].exp) / rat(s))) simple = false;
    if (!simple) continue;

    GRSpec g;
    g.a = as;
    g.b = {MonomialArg(Eis(1), rat(0))};
    g.c = cs;
    g.step = rat(s);
    QSeries rhs =
        poch_expand(PochFactor::inf(MonomialArg(Eis(1), rat(s)), rat(s)), order + 1)
            .mul_cap(gr_rhs(g, order), order);

    std::vector<ZFactor> fs;
    fs.push_back(ZFactor{ZKind::Theta, MonomialArg(Eis(1), rat(0)), -1, rat(s)});
    for (size_t i = 1; i < as.size(); ++i)
      fs.push_back(ZFactor{ZKind::EulerNum, as[i], 1, rat(s)});
    for (const auto& c : cs) fs.push_back(ZFactor{ZKind::EulerDen, c, 1, rat(s)});
    QSeries lhs = ct_product(fs, order);

    auto mm = QSeries::mismatch_below(lhs, rhs, order);
    if (mm) {
      std::ostringstream os;
      os << "constant term vs residue sum, base q^" << s << ", c = {";
      for (size_t i = 0; i < cs.size(); ++i) os << (i ? ", " : "") << cs[i].str();
      os << "}";
      if (as.size() > 1) os << ", extra a = " << as[1].str();
      os << ": " << mm_str(*mm);
      return fail(os.str());
    }
    ++done;
  }
  return pass(std::to_string(count) + " random residue-sum expansions match their constant term below q^" +
              std::to_string(order));
}

// --- truncation consistency: evaluating deeper never changes known terms

inline std::string random_product_expr(std::mt19937& rng) {
  auto atom = [&]() -> std::string {
    switch (rng() % 3) {
      case 0:
        return "f" + std::to_string(1 + rng() % 10);
      case 1: {
        long long m = 1 + static_cast<long long>(rng() % 8);
        long long a = 1 + static_cast<long long>(rng() % m);
        std::string sgn = (rng() % 2) ? "-" : "";
        return "P(" + sgn + "q^" + std::to_string(a) + ";q^" + std::to_string(m) + ")_inf";
      }
      default:
        return "q^" + std::to_string(1 + rng() % 3);
    }
  };
  auto prod = [&]() {
    std::string s = atom();
    int n = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i) s += ((rng() % 2) ? "*" : "/") + atom();
    return s;
  };
  std::string s = prod();
  if (rng() % 2) s += " + " + std::to_string(1 + rng() % 3) + "*" + prod();
  return s;
}

inline Result truncation_monotone(int count, long long lo, long long hi,
                                  unsigned seed = 424242u) {
  using namespace qrr;
  std::mt19937 rng(seed);
  for (int i = 0; i < count; ++i) {
    std::string text = random_product_expr(rng);
    Expr e = parse_expr(text);
    std::string canon = render_expr(e);
    if (render_expr(parse_expr(canon)) != canon)
      return fail("rendering is not a parse fixed point for: " + text);
    QSeries a = eval_expr(e, lo);
    QSeries b = eval_expr(e, hi);
    auto mm = QSeries::mismatch_below(a, b, lo);
    if (mm) return fail("orders " + std::to_string(lo) + " and " + std::to_string(hi) +
                        " disagree for " + text + ": " + mm_str(*mm));
  }
  return pass(std::to_string(count) + " expressions stable between orders " + std::to_string(lo) +
              " and " + std::to_string(hi));
}

// --- product-exponent recovery roundtrip

inline Result prodfit_roundtrip(int count, long long N, unsigned seed = 6174u) {
  using namespace qrr;
  std::mt19937 rng(seed);
  const long long rs[4] = {-2, -1, 1, 2};
  for (int t = 0; t < count; ++t) {
    long long m = 2 + static_cast<long long>(rng() % 7);
    int nf = 1 + static_cast<int>(rng() % 3);
    std::map<long long, long long> rsum;  // residue class 1..m -> power
    QSeries f = QSeries::constant(Eis(1));
    for (int i = 0; i < nf; ++i) {
      long long a = 1 + static_cast<long long>(rng() % m);
      long long r = rs[rng() % 4];
      rsum[a] += r;
      QSeries g = poch_expand(PochFactor::inf(MonomialArg(Eis(1), rat(a)), rat(m)), N + 1);
      f = f.mul_cap(g.pow_int(r, N + 1), N + 1);
    }
    ProductExponents pe = prodfit(f, N);
    if (!pe.integral) return fail("roundtrip lost integrality at modulus " + std::to_string(m));
    for (long long n = 1; n <= N; ++n) {
      long long a = ((n - 1) % m) + 1;
      long long want = rsum.count(a) ? -rsum[a] : 0;
      if (pe.e[static_cast<size_t>(n - 1)] != want)
        return fail("exponent e_" + std::to_string(n) + " = " +
                    rat_str(pe.e[static_cast<size_t>(n - 1)]) + ", expected " +
                    std::to_string(want) + " (modulus " + std::to_string(m) + ")");
    }
    std::map<long long, Rat> got;
    for (const auto& pf : classify(pe, m)) got[pf.a] = pf.r;
    std::map<long long, Rat> want;
    for (const auto& [a, r] : rsum)
      if (r != 0) want[a] = rat(r);
    if (got != want) return fail("classification mismatch at modulus " + std::to_string(m));
    auto cand = period_candidates(pe);
    if (std::find(cand.begin(), cand.end(), m) == cand.end())
      return fail("period candidates missed modulus " + std::to_string(m));
  }
  return pass(std::to_string(count) + " product patterns recovered through q^" +
              std::to_string(N));
}

}  // namespace props
