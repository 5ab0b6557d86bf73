#include "qrr/prodfit.hpp"

#include <string>

namespace qrr {

namespace {

bool periodic_with(const std::vector<Rat>& e, long long m) {
  for (size_t n = static_cast<size_t>(m); n < e.size(); ++n)
    if (e[n] != e[n % static_cast<size_t>(m)]) return false;
  return true;
}

}  // namespace

ProductExponents prodfit(const QSeries& f, long long N) {
  if (N < 1) throw Error("product fitting needs a positive order");
  if (f.known_zero()) throw Error("cannot fit the zero series");
  if (f.scale() != 1) throw Error("product fitting needs integer exponents");
  if (f.min_exp() != 0 || f.coeff_scaled(0) != Eis(1))
    throw Error("product fitting needs constant term 1");
  f.require_order(N + 1, "product fitting");

  std::vector<Eis> g(static_cast<size_t>(N) + 1);
  for (long long n = 0; n <= N; ++n) g[static_cast<size_t>(n)] = f.coeff_scaled(n);

  // q f'/f = sum s_k q^k recovered from n g_n = sum_{k<=n} s_k g_{n-k}
  std::vector<Eis> s(static_cast<size_t>(N) + 1);
  for (long long n = 1; n <= N; ++n) {
    Eis acc = g[static_cast<size_t>(n)] * Eis(n);
    for (long long k = 1; k < n; ++k) acc = acc - s[static_cast<size_t>(k)] * g[static_cast<size_t>(n - k)];
    s[static_cast<size_t>(n)] = acc;
  }

  ProductExponents pe;
  pe.e.resize(static_cast<size_t>(N));
  std::vector<Rat> er(static_cast<size_t>(N) + 1);
  for (long long n = 1; n <= N; ++n) {
    Eis acc = s[static_cast<size_t>(n)];
    for (long long d = 1; d < n; ++d)
      if (n % d == 0) acc = acc - Eis(rat(d) * er[static_cast<size_t>(d)], Rat(0));
    if (!acc.is_rational())
      throw Error("product exponent leaves the rationals at n=" + std::to_string(n));
    er[static_cast<size_t>(n)] = acc.re / n;
    pe.e[static_cast<size_t>(n - 1)] = er[static_cast<size_t>(n)];
    if (!rat_is_int(er[static_cast<size_t>(n)])) pe.integral = false;
  }
  return pe;
}

std::vector<ProdFactor> classify(const ProductExponents& pe, long long m) {
  if (m < 1) throw Error("modulus must be positive");
  const long long N = static_cast<long long>(pe.e.size());
  if (N < 2 * m)
    throw Error("not periodic with modulus " + std::to_string(m) +
                ": need at least " + std::to_string(2 * m) + " exponents");
  if (!periodic_with(pe.e, m))
    throw Error("not periodic with modulus " + std::to_string(m));
  std::vector<ProdFactor> fs;
  for (long long a = 1; a <= m; ++a) {
    Rat r = -pe.e[static_cast<size_t>(a - 1)];
    if (r != 0) fs.push_back({a, m, r});
  }
  return fs;
}

std::vector<long long> period_candidates(const ProductExponents& pe) {
  std::vector<long long> ms;
  const long long N = static_cast<long long>(pe.e.size());
  for (long long m = 1; 2 * m <= N; ++m)
    if (periodic_with(pe.e, m)) ms.push_back(m);
  return ms;
}

}  // namespace qrr
