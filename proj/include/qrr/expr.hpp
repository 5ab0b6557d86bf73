#pragma once
// Small expression language over truncated q-series.
//
//   atoms:     integer and rational literals ("3", "1/2"); w (primitive cube
//              root of unity); q and q^<rational>; f<m> (the infinite product
//              prod_{k>=1} (1 - q^{mk})); P(<mono>;<mono>)_<n> and
//              P(<mono>;<mono>)_inf (finite / infinite q-Pochhammer symbols;
//              the second monomial is the step and must be a positive power
//              of q).
//   operators: + - * / ^ and parentheses.  ^ binds tightest, then * and /,
//              then + and -; binary operators associate to the left.  The
//              exponent after ^ is a rational written like 2, -3 or -1/2
//              (the fraction is consumed greedily), or a parenthesised
//              constant expression.
//   monomials inside P(...):  [+|-] [number] [w[^j]] [q[^rational]]
//              with optional '*' separators, e.g. "-q", "w^2*q^3", "-1".
#include <memory>
#include <optional>
#include <string>

#include "qrr/products.hpp"
#include "qrr/qseries.hpp"

namespace qrr {

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { Num, Omega, Mono, Eta, Poch, Add, Sub, Mul, Div, Neg, Pow };
  Kind kind;
  size_t pos = 0, len = 0;        // byte span in the source text
  Rat num;                        // Num: value; Pow: exponent
  Rat qexp;                       // Mono: exponent of q
  long long eta_m = 1;            // Eta: m of f<m>
  MonomialArg parg;               // Poch: argument
  Rat pstep;                      // Poch: step exponent
  std::optional<long long> plen;  // Poch: length (nullopt = infinite)
  ExprPtr a, b;                   // operands
};

struct Expr {
  ExprPtr root;
  std::string src;  // original text, kept for error spans
};

// Parse `text`; throws Error("syntax error at offset ...") on bad input.
Expr parse_expr(const std::string& text);

// Canonical text form; parsing the rendering of a parsed expression gives
// back the same tree.
std::string render_expr(const ExprPtr& n);
std::string render_expr(const Expr& e);

// Evaluate to a series correct below q^order.  Division can eat precision;
// evaluation retries at a deeper working order for a few passes before
// giving up.  Errors are annotated with the source span of the failing
// subexpression.
QSeries eval_expr(const Expr& e, long long order);

// If the (sub)expression folds to a single monomial c*q^e, return it.
std::optional<MonomialArg> expr_monomial(const ExprPtr& n);

}  // namespace qrr
