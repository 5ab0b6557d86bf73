#include "qrr/expr.hpp"

#include <cctype>
#include <sstream>
#include <utility>

namespace qrr {
namespace {

using Kind = ExprNode::Kind;

ExprPtr mk(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

// ----------------------------------------------------------------- parsing

struct Parser {
  const std::string& s;
  size_t p = 0;

  explicit Parser(const std::string& text) : s(text) {}

  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream os;
    os << "syntax error at offset " << p;
    if (p >= s.size()) os << " (end of input)";
    os << ": " << msg;
    throw Error(os.str());
  }

  void ws() {
    while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
  }
  bool at(char c) const { return p < s.size() && s[p] == c; }
  bool peek(char c) {
    ws();
    return at(c);
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++p;
    return true;
  }
  void expect(char c, const char* ctx) {
    if (!eat(c)) fail(std::string("expected '") + c + "' " + ctx);
  }
  bool digit() const {
    return p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]));
  }

  long long integer() {
    if (!digit()) fail("expected digits");
    size_t q0 = p;
    while (digit()) ++p;
    try {
      return std::stoll(s.substr(q0, p - q0));
    } catch (...) {
      p = q0;
      fail("integer literal out of range");
    }
  }

  // digits['/'digits]; the fraction bar is taken only when digits follow it
  // immediately, so "1/f2" leaves the '/' for the division operator.
  Rat number() {
    long long n = integer();
    if (at('/') && p + 1 < s.size() &&
        std::isdigit(static_cast<unsigned char>(s[p + 1]))) {
      ++p;
      long long d = integer();
      if (d == 0) fail("zero denominator");
      return rat(n, d);
    }
    return rat(n);
  }

  Rat signed_number() {
    ws();
    bool neg = eat('-');
    if (!neg) eat('+');
    ws();
    Rat v = number();
    return neg ? Rat(-v) : v;
  }

  // [+|-] [number] [w[^int]] [q[^rational]] with optional '*' separators
  MonomialArg monomial_arg(const char* ctx) {
    ws();
    size_t start = p;
    bool neg = eat('-');
    if (!neg) eat('+');
    Rat r(1);
    long long wj = 0;
    Rat qe(0);
    bool saw_n = false, saw_w = false, saw_q = false, want_part = true;
    for (;;) {
      ws();
      if (digit()) {
        if (saw_n || saw_w || saw_q) fail("number must come first in a monomial");
        r = number();
        saw_n = true;
      } else if (at('w')) {
        if (saw_w || saw_q) fail("unexpected 'w' in a monomial");
        ++p;
        saw_w = true;
        wj = 1;
        if (at('^')) {
          ++p;
          ws();
          bool ng = eat('-');
          ws();
          long long j = integer();
          wj = ng ? -j : j;
        }
      } else if (at('q')) {
        if (saw_q) fail("duplicate 'q' in a monomial");
        ++p;
        saw_q = true;
        qe = 1;
        if (at('^')) {
          ++p;
          qe = signed_number();
        }
      } else {
        if (want_part && (saw_n || saw_w || saw_q))
          fail("expected a monomial component after '*'");
        if (!(saw_n || saw_w || saw_q)) {
          p = start;
          fail(std::string("expected a monomial ") + ctx);
        }
        break;
      }
      want_part = eat('*');
      if (!want_part) break;
    }
    Eis c = omega_pow(wj) * Eis(neg ? Rat(-r) : r);
    return MonomialArg(c, qe);
  }

  // constant folding for parenthesised exponents
  std::optional<Rat> fold_const(const ExprPtr& n) {
    switch (n->kind) {
      case Kind::Num:
        return n->num;
      case Kind::Neg: {
        auto a = fold_const(n->a);
        if (!a) return std::nullopt;
        return Rat(-*a);
      }
      case Kind::Add:
      case Kind::Sub:
      case Kind::Mul:
      case Kind::Div: {
        auto a = fold_const(n->a), b = fold_const(n->b);
        if (!a || !b) return std::nullopt;
        if (n->kind == Kind::Add) return Rat(*a + *b);
        if (n->kind == Kind::Sub) return Rat(*a - *b);
        if (n->kind == Kind::Mul) return Rat(*a * *b);
        if (*b == 0) return std::nullopt;
        return Rat(*a / *b);
      }
      case Kind::Pow: {
        auto a = fold_const(n->a);
        if (!a || !rat_is_int(n->num)) return std::nullopt;
        long long k = rat_to_ll(n->num);
        Rat base = *a;
        if (k < 0) {
          if (base == 0) return std::nullopt;
          base = 1 / base;
          k = -k;
        }
        Rat r(1);
        for (long long i = 0; i < k; ++i) r *= base;
        return r;
      }
      default:
        return std::nullopt;
    }
  }

  Rat exponent() {
    ws();
    if (at('(')) {
      size_t open = p;
      ++p;
      ExprPtr e = sum();
      expect(')', "to close the exponent");
      auto v = fold_const(e);
      if (!v) {
        p = open;
        fail("exponent must be a rational constant");
      }
      return *v;
    }
    return signed_number();
  }

  ExprPtr atom() {
    ws();
    size_t start = p;
    if (eat('(')) {
      ExprPtr e = sum();
      expect(')', "to close '('");
      return e;
    }
    if (p >= s.size()) fail("expected an operand");
    char c = s[p];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rat v = number();
      ExprNode n{Kind::Num};
      n.pos = start;
      n.len = p - start;
      n.num = v;
      return mk(std::move(n));
    }
    if (c == 'q') {
      ++p;
      ExprNode n{Kind::Mono};
      n.pos = start;
      n.len = p - start;
      n.qexp = 1;
      return mk(std::move(n));
    }
    if (c == 'w') {
      ++p;
      ExprNode n{Kind::Omega};
      n.pos = start;
      n.len = p - start;
      return mk(std::move(n));
    }
    if (c == 'f') {
      ++p;
      if (!digit()) fail("expected digits after 'f'");
      long long m = integer();
      if (m < 1) fail("f<m> needs m >= 1");
      ExprNode n{Kind::Eta};
      n.pos = start;
      n.len = p - start;
      n.eta_m = m;
      return mk(std::move(n));
    }
    if (c == 'P') {
      ++p;
      expect('(', "after 'P'");
      MonomialArg arg = monomial_arg("argument");
      expect(';', "between the Pochhammer argument and step");
      ws();
      size_t steppos = p;
      MonomialArg step = monomial_arg("step");
      if (!(step.coeff == Eis(1)) || !(step.exp > 0)) {
        p = steppos;
        fail("Pochhammer step must be a positive power of q");
      }
      expect(')', "to close 'P('");
      expect('_', "after 'P(...)'");
      ws();
      std::optional<long long> len;
      if (s.compare(p, 3, "inf") == 0) {
        p += 3;
      } else if (digit()) {
        len = integer();
      } else {
        fail("expected 'inf' or a nonnegative integer after '_'");
      }
      ExprNode n{Kind::Poch};
      n.pos = start;
      n.len = p - start;
      n.parg = arg;
      n.pstep = step.exp;
      n.plen = len;
      return mk(std::move(n));
    }
    fail("expected an operand");
  }

  ExprPtr power() {
    ws();
    size_t start = p;
    ExprPtr base = atom();
    while (peek('^')) {
      ++p;
      Rat e = exponent();
      if (base->kind == Kind::Mono) {
        ExprNode n{Kind::Mono};
        n.pos = start;
        n.len = p - start;
        n.qexp = base->qexp * e;
        base = mk(std::move(n));
      } else {
        ExprNode n{Kind::Pow};
        n.pos = start;
        n.len = p - start;
        n.num = e;
        n.a = base;
        base = mk(std::move(n));
      }
    }
    return base;
  }

  ExprPtr unary() {
    ws();
    size_t start = p;
    if (eat('-')) {
      ExprPtr x = unary();
      ExprNode n{Kind::Neg};
      n.pos = start;
      n.len = p - start;
      n.a = x;
      return mk(std::move(n));
    }
    if (eat('+')) return unary();
    return power();
  }

  ExprPtr product() {
    ws();
    size_t start = p;
    ExprPtr l = unary();
    for (;;) {
      if (eat('*')) {
        ExprPtr r = unary();
        ExprNode n{Kind::Mul};
        n.pos = start;
        n.len = p - start;
        n.a = l;
        n.b = r;
        l = mk(std::move(n));
      } else if (eat('/')) {
        ExprPtr r = unary();
        ExprNode n{Kind::Div};
        n.pos = start;
        n.len = p - start;
        n.a = l;
        n.b = r;
        l = mk(std::move(n));
      } else {
        break;
      }
    }
    return l;
  }

  ExprPtr sum() {
    ws();
    size_t start = p;
    ExprPtr l = product();
    for (;;) {
      if (eat('+')) {
        ExprPtr r = product();
        ExprNode n{Kind::Add};
        n.pos = start;
        n.len = p - start;
        n.a = l;
        n.b = r;
        l = mk(std::move(n));
      } else if (eat('-')) {
        ExprPtr r = product();
        ExprNode n{Kind::Sub};
        n.pos = start;
        n.len = p - start;
        n.a = l;
        n.b = r;
        l = mk(std::move(n));
      } else {
        break;
      }
    }
    return l;
  }
};

// --------------------------------------------------------------- rendering

int prec(Kind k) {
  switch (k) {
    case Kind::Add:
    case Kind::Sub:
    case Kind::Neg:
      return 1;
    case Kind::Mul:
    case Kind::Div:
      return 2;
    case Kind::Pow:
      return 3;
    default:
      return 4;
  }
}

// negative literals act like unary minus for bracketing purposes
int eff_prec(const ExprPtr& n) {
  if (n->kind == Kind::Num && n->num < 0) return 1;
  return prec(n->kind);
}

std::string mono_str(const MonomialArg& m) {
  Rat r;
  int j;
  if (m.coeff.om == 0) {
    r = m.coeff.re;
    j = 0;
  } else if (m.coeff.re == 0) {
    r = m.coeff.om;
    j = 1;
  } else if (m.coeff.re == m.coeff.om) {
    r = -m.coeff.re;  // r*w^2 = -r - r*w
    j = 2;
  } else {
    throw Error("cannot render a non-monomial coefficient: " + m.coeff.str());
  }
  std::string out;
  if (r < 0) {
    out += '-';
    r = -r;
  }
  bool star = false;
  if (r != 1 || (j == 0 && m.exp == 0)) {
    out += rat_str(r);
    star = true;
  }
  if (j != 0) {
    if (star) out += '*';
    out += (j == 1) ? "w" : "w^2";
    star = true;
  }
  if (m.exp != 0) {
    if (star) out += '*';
    out += (m.exp == 1) ? "q" : "q^" + rat_str(m.exp);
  }
  return out;
}

void render_node(std::ostringstream& os, const ExprPtr& n);

void child(std::ostringstream& os, const ExprPtr& c, bool parens) {
  if (parens) {
    os << '(';
    render_node(os, c);
    os << ')';
  } else {
    render_node(os, c);
  }
}

void render_node(std::ostringstream& os, const ExprPtr& n) {
  switch (n->kind) {
    case Kind::Num:
      os << rat_str(n->num);
      return;
    case Kind::Omega:
      os << 'w';
      return;
    case Kind::Mono:
      if (n->qexp == 1)
        os << 'q';
      else
        os << "q^" << rat_str(n->qexp);
      return;
    case Kind::Eta:
      os << 'f' << n->eta_m;
      return;
    case Kind::Poch:
      os << "P(" << mono_str(n->parg) << ';'
         << mono_str(MonomialArg(Eis(1), n->pstep)) << ")_";
      if (n->plen)
        os << *n->plen;
      else
        os << "inf";
      return;
    case Kind::Add:
    case Kind::Sub:
      child(os, n->a, false);
      os << (n->kind == Kind::Add ? '+' : '-');
      child(os, n->b, eff_prec(n->b) <= 1);
      return;
    case Kind::Mul:
      child(os, n->a, eff_prec(n->a) < 2 && n->a->kind != Kind::Neg);
      os << '*';
      child(os, n->b, eff_prec(n->b) <= 2);
      return;
    case Kind::Div:
      child(os, n->a, eff_prec(n->a) < 2 && n->a->kind != Kind::Neg);
      os << '/';
      child(os, n->b, eff_prec(n->b) <= 2 || n->b->kind == Kind::Num);
      return;
    case Kind::Neg:
      os << '-';
      child(os, n->a, eff_prec(n->a) <= 2);
      return;
    case Kind::Pow:
      child(os, n->a, prec(n->a->kind) < 4 || (n->a->kind == Kind::Num && n->a->num < 0));
      os << '^' << rat_str(n->num);
      return;
  }
}

// -------------------------------------------------------------- evaluation

Eis eis_pow_int(Eis c, long long k) {
  if (k < 0) {
    c = c.inv();
    k = -k;
  }
  Eis r(1);
  while (k > 0) {
    if (k & 1) r = r * c;
    k >>= 1;
    if (k > 0) c = c * c;
  }
  return r;
}

QSeries eval_node(const ExprNode& n, const std::string& src, long long W);

QSeries eval_node_inner(const ExprNode& n, const std::string& src,
                        long long W) {
  switch (n.kind) {
    case Kind::Num:
      return QSeries::constant(Eis(n.num));
    case Kind::Omega:
      return QSeries::constant(omega_pow(1));
    case Kind::Mono:
      return QSeries::monomial(Eis(1), n.qexp);
    case Kind::Eta:
      return eta_expand({{n.eta_m, 1}}, W);
    case Kind::Poch:
      return poch_expand(PochFactor{n.parg, n.pstep, n.plen}, W);
    case Kind::Add:
      return eval_node(*n.a, src, W) + eval_node(*n.b, src, W);
    case Kind::Sub:
      return eval_node(*n.a, src, W) - eval_node(*n.b, src, W);
    case Kind::Neg:
      return eval_node(*n.a, src, W).times(Eis(-1));
    case Kind::Mul: {
      QSeries x = eval_node(*n.a, src, W), y = eval_node(*n.b, src, W);
      if (x.is_exact() && y.is_exact()) return x * y;
      return x.mul_cap(y, W);
    }
    case Kind::Div: {
      QSeries x = eval_node(*n.a, src, W), y = eval_node(*n.b, src, W);
      QSeries yi = y.inv(W);
      if (x.is_exact() && yi.is_exact()) return x * yi;
      return x.mul_cap(yi, W);
    }
    case Kind::Pow: {
      if (auto m = expr_monomial(n.a)) {
        if (rat_is_int(n.num)) {
          long long k = rat_to_ll(n.num);
          if (m->coeff.is_zero() && k < 0)
            throw Error("zero raised to a negative power");
          return QSeries::monomial(eis_pow_int(m->coeff, k), m->exp * n.num);
        }
        if (m->coeff == Eis(1))
          return QSeries::monomial(Eis(1), m->exp * n.num);
      }
      if (!rat_is_int(n.num))
        throw Error("fractional exponent needs a pure power of q");
      return eval_node(*n.a, src, W).pow_int(rat_to_ll(n.num), W);
    }
  }
  throw Error("unreachable expression kind");
}

QSeries eval_node(const ExprNode& n, const std::string& src, long long W) {
  try {
    return eval_node_inner(n, src, W);
  } catch (Error& e) {
    std::string m = e.what();
    if (m.find(" [at ") != std::string::npos) throw;
    std::ostringstream os;
    os << m << " [at " << n.pos << ".." << n.pos + n.len;
    if (n.len > 0 && n.pos + n.len <= src.size() && n.len <= 60)
      os << ": " << src.substr(n.pos, n.len);
    os << ']';
    throw Error(os.str());
  }
}

}  // namespace

Expr parse_expr(const std::string& text) {
  Parser P(text);
  ExprPtr root = P.sum();
  P.ws();
  if (P.p != text.size()) P.fail("unexpected trailing input");
  return Expr{std::move(root), text};
}

std::string render_expr(const ExprPtr& n) {
  std::ostringstream os;
  render_node(os, n);
  return os.str();
}

std::string render_expr(const Expr& e) { return render_expr(e.root); }

std::optional<MonomialArg> expr_monomial(const ExprPtr& n) {
  switch (n->kind) {
    case Kind::Num:
      return MonomialArg(Eis(n->num), Rat(0));
    case Kind::Omega:
      return MonomialArg(omega_pow(1), Rat(0));
    case Kind::Mono:
      return MonomialArg(Eis(1), n->qexp);
    case Kind::Neg: {
      auto m = expr_monomial(n->a);
      if (!m) return std::nullopt;
      return MonomialArg(-m->coeff, m->exp);
    }
    case Kind::Mul: {
      auto x = expr_monomial(n->a), y = expr_monomial(n->b);
      if (!x || !y) return std::nullopt;
      return x->times(*y);
    }
    case Kind::Div: {
      auto x = expr_monomial(n->a), y = expr_monomial(n->b);
      if (!x || !y || y->coeff.is_zero()) return std::nullopt;
      return x->div(*y);
    }
    case Kind::Pow: {
      auto m = expr_monomial(n->a);
      if (!m) return std::nullopt;
      if (rat_is_int(n->num)) {
        long long k = rat_to_ll(n->num);
        if (m->coeff.is_zero() && k < 0) return std::nullopt;
        return MonomialArg(eis_pow_int(m->coeff, k), m->exp * n->num);
      }
      if (m->coeff == Eis(1)) return MonomialArg(Eis(1), m->exp * n->num);
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

QSeries eval_expr(const Expr& e, long long order) {
  if (!e.root) throw Error("empty expression");
  long long work = order;
  for (int pass = 0; pass < 5; ++pass) {
    QSeries r = eval_node(*e.root, e.src, work);
    if (r.is_exact()) return r;
    long long have = floor_div(r.trunc(), r.scale());
    if (have >= order) return r;
    work += std::max<long long>(1, order - have);
  }
  throw Error("expression needs unexpectedly deep working precision");
}

}  // namespace qrr
