#pragma once
// Recover the exponents e_n with f = prod_{n>=1} (1 - q^n)^(-e_n) from a
// truncated series via its logarithmic derivative, and classify periodic
// exponent patterns as products of (q^a;q^m)_inf factors.
#include "qrr/qseries.hpp"

#include <vector>

namespace qrr {

struct ProductExponents {
  std::vector<Rat> e;    // e[i] is the exponent e_(i+1)
  bool integral = true;  // false as soon as some e_n is not an integer
};

// f must have integer exponents, constant term 1, and order > N
ProductExponents prodfit(const QSeries& f, long long N);

// (q^a; q^m)_inf ^ r
struct ProdFactor {
  long long a = 1;
  long long m = 1;
  Rat r;
};

// residue presentation of an exactly m-periodic pattern; needs N >= 2m
std::vector<ProdFactor> classify(const ProductExponents& pe, long long m);

// every modulus m with 1 <= m <= N/2 whose periodicity check passes
std::vector<long long> period_candidates(const ProductExponents& pe);

}  // namespace qrr
