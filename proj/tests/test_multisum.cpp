#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "property_suites.hpp"
#include "qrr/multisum.hpp"

using namespace qrr;

namespace {

AffinePoch qn_poch(long long axis, int dim) {  // (q;q)_{n_axis}
  AffinePoch p{MonomialArg(Eis(1), rat(1)), rat(1), std::vector<long long>(dim, 0), 0};
  p.len_lin[static_cast<size_t>(axis)] = 1;
  return p;
}

SumTerm rr_sum() {  // sum q^(n^2)/(q;q)_n
  SumTerm t;
  t.dim = 1;
  t.quad = {{rat(1)}};
  t.lin = {rat(0)};
  t.den_pochs = {qn_poch(0, 1)};
  return t;
}

SumTerm double_sum() {  // sum q^(i^2+2ij+2j^2) / ((q;q)_i (q^2;q^2)_j)
  SumTerm t;
  t.dim = 2;
  t.quad = {{rat(1), rat(1)}, {rat(1), rat(2)}};
  t.lin = {rat(0), rat(0)};
  t.den_pochs = {qn_poch(0, 2),
                 AffinePoch{MonomialArg(Eis(1), rat(2)), rat(2), {0, 1}, 0}};
  return t;
}

}  // namespace

TEST_CASE("single sum with quadratic exponent") {
  QSeries s = eval_sum_term(rr_sum(), 7);
  const long long expected[7] = {1, 1, 1, 1, 2, 2, 3};
  for (long long n = 0; n < 7; ++n) CHECK(s.coeff(rat(n)) == Eis(expected[n]));

  // partitions with gaps >= 2 (staircase form of the same sum)
  QSeries deep = eval_sum_term(rr_sum(), 30);
  auto ref = oracle::gap2_partitions(29, 1);
  for (long long n = 0; n < 30; ++n) CHECK(deep.coeff(rat(n)) == Eis(ref[static_cast<size_t>(n)]));
}

TEST_CASE("double sum with cross term") {
  QSeries s = eval_sum_term(double_sum(), 7);
  const long long expected[7] = {1, 1, 2, 1, 3, 3, 5};
  for (long long n = 0; n < 7; ++n) CHECK(s.coeff(rat(n)) == Eis(expected[n]));
}

TEST_CASE("double sum matches a brute-force enumeration") {
  const long long order = 25;
  QSeries brute = QSeries::zero(1, order);
  for (long long i = 0; i * i <= order + i; ++i) {
    for (long long j = 0; 2 * j * j <= order; ++j) {
      if (i * i + 2 * i * j + 2 * j * j >= order) continue;
      QSeries term = QSeries::monomial(Eis(1), rat(i * i + 2 * i * j + 2 * j * j));
      for (long long k = 1; k <= i; ++k) term.div_binom(Eis(1), rat(k), order);
      for (long long k = 1; k <= j; ++k) term.div_binom(Eis(1), rat(2 * k), order);
      term.truncate_q(order);
      brute = brute + term;
    }
  }
  QSeries s = eval_sum_term(double_sum(), order);
  CHECK(!QSeries::mismatch_below(s, brute, order));
}

TEST_CASE("zero-dimensional sums are monomials") {
  SumTerm t;
  t.dim = 0;
  t.cst = rat(5);
  QSeries s = eval_sum_term(t, 10);
  CHECK(!QSeries::mismatch_below(s, QSeries::monomial(Eis(1), rat(5)).truncate_q(10), 10));
}

TEST_CASE("prefactor and index-independent products") {
  SumTerm t;
  t.dim = 0;
  t.prefactor = MonomialArg(Eis(2), rat(-1));
  t.inf_prods = {PochFactor::inf(MonomialArg(Eis(-1), rat(1)), rat(1))};
  QSeries s = eval_sum_term(t, 10);
  QSeries ref = poch_expand(PochFactor::inf(MonomialArg(Eis(-1), rat(1)), rat(1)), 11)
                    .times(Eis(2))
                    .shift(rat(-1));
  CHECK(!QSeries::mismatch_below(s, ref, 10));
}

TEST_CASE("linear-growth axis sums to the partition generating function") {
  SumTerm t;
  t.dim = 1;
  t.quad = {{rat(0)}};
  t.lin = {rat(1)};
  t.den_pochs = {qn_poch(0, 1)};
  QSeries s = eval_sum_term(t, 30);
  auto ref = oracle::partition_dp(oracle::residue_parts({0}, 1, 29), 29);
  for (long long n = 0; n < 30; ++n) CHECK(s.coeff(rat(n)) == Eis(ref[static_cast<size_t>(n)]));
}

TEST_CASE("unit-root weighted sum") {
  SumTerm t;  // sum w^n q^n = 1/(1 - w q)
  t.dim = 1;
  t.quad = {{rat(0)}};
  t.lin = {rat(1)};
  t.omega_lin = {1};
  QSeries s = eval_sum_term(t, 8);
  QSeries ref = QSeries::constant(Eis(1));
  ref.div_binom(omega_pow(1), rat(1), 8);
  CHECK(!QSeries::mismatch_below(s, ref, 8));
}

TEST_CASE("affine Pochhammer lengths") {
  // sum q^(n^2) (q;q)_{n+1} evaluated against explicit terms
  SumTerm t;
  t.dim = 1;
  t.quad = {{rat(1)}};
  t.lin = {rat(0)};
  t.num_pochs = {AffinePoch{MonomialArg(Eis(1), rat(1)), rat(1), {1}, 1}};
  const long long order = 12;
  QSeries brute = QSeries::zero(1, order);
  for (long long n = 0; n * n < order; ++n) {
    QSeries term = QSeries::monomial(Eis(1), rat(n * n));
    for (long long k = 1; k <= n + 1; ++k) term.mul_binom(Eis(1), rat(k));
    term.truncate_q(order);
    brute = brute + term;
  }
  CHECK(!QSeries::mismatch_below(eval_sum_term(t, order), brute, order));
}

TEST_CASE("sides add their terms") {
  SumTerm a, b;
  a.dim = 0;
  a.cst = rat(2);
  b.dim = 0;
  b.cst = rat(3);
  QSeries s = eval_sum_side({a, b}, 10);
  CHECK(s.coeff(rat(2)) == Eis(1));
  CHECK(s.coeff(rat(3)) == Eis(1));
  CHECK(s.coeff(rat(4)) == Eis(0));
}

TEST_CASE("shape validation") {
  SumTerm t = double_sum();

  SumTerm bad = t;
  bad.quad = {{rat(1)}};
  CHECK_THROWS_WITH_AS(validate_sum_term(bad), "quadratic form has wrong shape", Error);

  bad = t;
  bad.lin = {rat(0)};
  CHECK_THROWS_WITH_AS(validate_sum_term(bad), "linear part has wrong arity", Error);

  bad = t;
  bad.quad[0][0] = rat(-1);
  CHECK_THROWS_WITH_AS(validate_sum_term(bad), "quadratic form needs nonnegative diagonal entries",
                       Error);

  bad = t;
  bad.quad[0][0] = rat(0);  // zero diagonal with zero linear part
  CHECK_THROWS_WITH_AS(validate_sum_term(bad),
                       "axis with no quadratic growth needs a positive linear part", Error);

  bad = t;
  bad.quad[0][1] = rat(2);
  CHECK_THROWS_WITH_AS(validate_sum_term(bad), "quadratic form must be symmetric", Error);

  bad = t;
  bad.quad[0][1] = bad.quad[1][0] = rat(-1);
  CHECK_THROWS_WITH_AS(validate_sum_term(bad),
                       "quadratic form must have nonnegative off-diagonal entries", Error);

  bad = t;
  bad.sign_lin = {1};
  CHECK_THROWS_WITH_AS(validate_sum_term(bad), "sign twist has wrong arity", Error);

  bad = t;
  bad.omega_lin = {0, 1, 0};
  CHECK_THROWS_WITH_AS(validate_sum_term(bad), "omega twist has wrong arity", Error);

  bad = t;
  bad.den_pochs[0].len_lin = {1};
  CHECK_THROWS_WITH_AS(validate_sum_term(bad), "Pochhammer length has wrong arity", Error);

  bad = t;
  bad.den_pochs[0].arg.exp = rat(0);
  CHECK_THROWS_WITH_AS(validate_sum_term(bad),
                       "denominator Pochhammer needs a positive argument exponent", Error);

  bad = t;
  bad.prefactor.coeff = Eis(0);
  CHECK_THROWS_WITH_AS(validate_sum_term(bad), "prefactor must be nonzero", Error);
}

TEST_CASE("enumeration bound guard") {
  SumTerm t;
  t.dim = 1;
  t.quad = {{rat(0)}};
  t.lin = {rat(1, 3000000)};
  CHECK_THROWS_WITH_AS(eval_sum_term(t, 2), "unbounded enumeration: axis bound not found", Error);
}

TEST_CASE("classical summation identities") {
  for (const auto& r : {props::euler_first(30), props::euler_second(30), props::q_binomial(30),
                        props::heine(25), props::lebesgue(30)}) {
    INFO(r.detail);
    CHECK(r.ok);
  }
}
