#pragma once
// Evaluation of multidimensional q-hypergeometric sums
//
//   prefactor * prod(inf_prods) *
//     sum over i in Z_{>=0}^dim of
//       (-1)^(sign_lin . i) w^(omega_lin . i) q^(i^T quad i + lin . i + cst)
//         * prod num_pochs(i) / prod den_pochs(i)
//
// truncated below a requested order.  The quadratic form must have positive
// diagonal and nonnegative off-diagonal entries so that per-axis summation
// bounds exist; every tuple whose exponent provably lands at or above the
// order is skipped.
#include "qrr/products.hpp"

#include <vector>

namespace qrr {

// (arg; q^step)_(len_lin . i + len_const) as a factor of the summand
struct AffinePoch {
  MonomialArg arg;
  Rat step;
  std::vector<long long> len_lin;
  long long len_const = 0;
};

struct SumTerm {
  int dim = 0;
  std::vector<std::vector<Rat>> quad;  // symmetric dim x dim
  std::vector<Rat> lin;                // size dim
  Rat cst;
  std::vector<int> sign_lin;   // empty means all zero
  std::vector<int> omega_lin;  // empty means all zero
  std::vector<AffinePoch> num_pochs;
  std::vector<AffinePoch> den_pochs;  // first argument exponent must be positive
  MonomialArg prefactor;
  std::vector<PochFactor> inf_prods;  // index-independent multipliers
};

// throws Error when the term violates the shape rules above
void validate_sum_term(const SumTerm& t);

QSeries eval_sum_term(const SumTerm& t, long long order);
QSeries eval_sum_side(const std::vector<SumTerm>& ts, long long order);

}  // namespace qrr
