#include "qrr/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace qrr {

using njson = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------- parsing

Rat jrat(const njson& j, const char* what) {
  if (j.is_number_integer()) return rat(j.get<long long>());
  if (j.is_string()) return rat_parse(j.get<std::string>());
  throw Error(std::string(what) + ": expected an integer or \"p/q\" string");
}

// scalar in Q(w): integer, "p/q", "w"/"-w"/"w2"/"-w2", or {"re":..,"om":..}
Eis jcoeff(const njson& j) {
  if (j.is_number_integer()) return Eis(rat(j.get<long long>()));
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "w") return omega_pow(1);
    if (s == "-w") return -omega_pow(1);
    if (s == "w2" || s == "w^2") return omega_pow(2);
    if (s == "-w2" || s == "-w^2") return -omega_pow(2);
    return Eis(rat_parse(s));
  }
  if (j.is_object()) {
    Rat re = j.contains("re") ? jrat(j.at("re"), "re") : Rat(0);
    Rat om = j.contains("om") ? jrat(j.at("om"), "om") : Rat(0);
    return Eis(re, om);
  }
  throw Error("scalar: expected an integer, string, or {re, om} object");
}

// applies the optional coeff / neg / w fields of `j` to a unit coefficient
Eis jarg_coeff(const njson& j) {
  Eis c = j.contains("coeff") ? jcoeff(j.at("coeff")) : Eis(1);
  if (j.value("neg", false)) c = -c;
  if (j.contains("w")) c = c * omega_pow(j.at("w").get<long long>());
  return c;
}

// {"coeff"?: scalar, "exp"?: rat, "neg"?: bool, "w"?: int}
MonomialArg jmono(const njson& j) {
  if (!j.is_object()) throw Error("monomial: expected an object");
  MonomialArg m;
  m.coeff = jarg_coeff(j);
  if (j.contains("exp")) m.exp = jrat(j.at("exp"), "exp");
  if (m.coeff.is_zero()) throw Error("monomial coefficient must be nonzero");
  return m;
}

std::vector<long long> jints(const njson& j, const char* what) {
  if (!j.is_array()) throw Error(std::string(what) + ": expected an array");
  std::vector<long long> v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw Error(std::string(what) + ": expected integers");
    v.push_back(x.get<long long>());
  }
  return v;
}

std::vector<int> jsmall_ints(const njson& j, const char* what) {
  std::vector<int> v;
  for (long long x : jints(j, what)) v.push_back(static_cast<int>(x));
  return v;
}

AffinePoch jaffine(const njson& j, int dim) {
  AffinePoch p;
  p.arg = MonomialArg(jarg_coeff(j), jrat(j.at("exp"), "exp"));
  p.step = jrat(j.at("step"), "step");
  if (j.contains("len_lin")) p.len_lin = jints(j.at("len_lin"), "len_lin");
  p.len_lin.resize(static_cast<size_t>(dim), 0);
  p.len_const = j.value("len_const", 0LL);
  return p;
}

// infinite product factor {"a": rat, "m": rat} (or {"exp","step"}) with the
// usual coeff / neg / w decorations
PochFactor jinf_factor(const njson& j) {
  Rat a = jrat(j.contains("a") ? j.at("a") : j.at("exp"), "a");
  Rat m = jrat(j.contains("m") ? j.at("m") : j.at("step"), "m");
  return PochFactor::inf(MonomialArg(jarg_coeff(j), a), m);
}

SumTerm jsum(const njson& j) {
  SumTerm t;
  t.dim = static_cast<int>(j.value("dim", 0LL));
  if (j.contains("quad"))
    for (const auto& row : j.at("quad")) {
      std::vector<Rat> r;
      for (const auto& x : row) r.push_back(jrat(x, "quad"));
      t.quad.push_back(std::move(r));
    }
  if (j.contains("lin"))
    for (const auto& x : j.at("lin")) t.lin.push_back(jrat(x, "lin"));
  t.lin.resize(static_cast<size_t>(t.dim), Rat(0));
  if (j.contains("const")) t.cst = jrat(j.at("const"), "const");
  if (j.contains("sign_lin")) t.sign_lin = jsmall_ints(j.at("sign_lin"), "sign_lin");
  if (j.contains("omega_lin")) t.omega_lin = jsmall_ints(j.at("omega_lin"), "omega_lin");
  if (j.contains("num_pochs"))
    for (const auto& p : j.at("num_pochs")) t.num_pochs.push_back(jaffine(p, t.dim));
  if (j.contains("den_pochs"))
    for (const auto& p : j.at("den_pochs")) t.den_pochs.push_back(jaffine(p, t.dim));
  if (j.contains("prefactor")) t.prefactor = jmono(j.at("prefactor"));
  if (j.contains("inf_prods"))
    for (const auto& p : j.at("inf_prods")) t.inf_prods.push_back(jinf_factor(p));
  validate_sum_term(t);
  return t;
}

ZFactor jzfactor(const njson& j) {
  std::string k = j.at("kind").get<std::string>();
  std::string norm;
  for (char ch : k)
    if (ch != '-' && ch != '_') norm += static_cast<char>(std::tolower(ch));
  ZFactor z;
  if (norm == "eulernum")
    z.kind = ZKind::EulerNum;
  else if (norm == "eulerden")
    z.kind = ZKind::EulerDen;
  else if (norm == "theta")
    z.kind = ZKind::Theta;
  else
    throw Error("unknown z-factor kind '" + k + "'");
  z.arg = MonomialArg(jarg_coeff(j), j.contains("exp") ? jrat(j.at("exp"), "exp") : Rat(0));
  z.zpow = j.value("zpow", 1LL);
  z.step = jrat(j.at("step"), "step");
  return z;
}

GRSpec jgr(const njson& j) {
  GRSpec g;
  auto fill = [&](const char* key, std::vector<MonomialArg>& out) {
    if (!j.contains(key)) return;
    for (const auto& m : j.at(key)) out.push_back(jmono(m));
  };
  fill("a", g.a);
  fill("b", g.b);
  fill("c", g.c);
  fill("d", g.d);
  g.step = jrat(j.contains("base") ? j.at("base") : j.at("step"), "base");
  if (g.step <= 0) throw Error("base exponent must be positive");
  return g;
}

SidePtr jside(const njson& j);

std::vector<SidePtr> jchildren(const njson& j) {
  std::vector<SidePtr> out;
  for (const auto& c : j.at("of")) out.push_back(jside(c));
  if (out.empty()) throw Error("combinator needs at least one child");
  return out;
}

SidePtr jside(const njson& j) {
  if (!j.is_object() || !j.contains("kind")) throw Error("side: expected {\"kind\": ...}");
  const std::string kind = j.at("kind").get<std::string>();
  auto n = std::make_shared<SideNode>();
  using K = SideNode::Kind;

  if (kind == "sum") {
    n->kind = K::Sum;
    n->term = jsum(j);
  } else if (kind == "product") {
    n->kind = K::Product;
    for (const auto& f : j.at("factors")) {
      PochFactor pf = jinf_factor(f);
      if (pf.step <= 0) throw Error("product factor step must be positive");
      long long r = f.value("r", 1LL);
      if (r == 0) throw Error("product factor power must be nonzero");
      n->pfactors.push_back(std::move(pf));
      n->ppow.push_back(r);
    }
    if (j.contains("prefactor")) n->prefactor = jmono(j.at("prefactor"));
  } else if (kind == "ct") {
    n->kind = K::CT;
    long long thetas = 0;
    for (const auto& f : j.at("factors")) {
      n->zfactors.push_back(jzfactor(f));
      thetas += n->zfactors.back().kind == ZKind::Theta ? 1 : 0;
      if (n->zfactors.back().step <= 0) throw Error("z-factor step must be positive");
    }
    if (thetas != 1) throw Error("constant-term product needs exactly one theta factor");
  } else if (kind == "gr") {
    n->kind = K::GR;
    n->gr = jgr(j);
  } else if (kind == "expr") {
    n->kind = K::ExprText;
    n->expr = parse_expr(j.at("text").get<std::string>());
  } else if (kind == "cf") {
    n->kind = K::CF;
    if (j.contains("depth")) n->cf_depth = static_cast<int>(j.at("depth").get<long long>());
  } else if (kind == "add" || kind == "mul") {
    n->kind = kind == "add" ? K::Add : K::Mul;
    n->of = jchildren(j);
  } else if (kind == "scale") {
    n->kind = K::Scale;
    n->coeff = jcoeff(j.at("coeff"));
    if (n->coeff.is_zero()) throw Error("scale coefficient must be nonzero");
    n->child = jside(j.at("of"));
  } else if (kind == "pow") {
    n->kind = K::Pow;
    n->ipow = j.at("n").get<long long>();
    n->child = jside(j.at("of"));
  } else if (kind == "subst") {
    n->kind = K::Subst;
    n->subst_m = jrat(j.at("m"), "m");
    if (n->subst_m <= 0) throw Error("substitution power must be positive");
    n->child = jside(j.at("of"));
  } else if (kind == "twist") {
    n->kind = K::Twist;
    n->twist_j = static_cast<int>(j.at("j").get<long long>());
    n->child = jside(j.at("of"));
  } else if (kind == "extract") {
    n->kind = K::Extract;
    n->ext_r = j.at("r").get<long long>();
    n->ext_m = j.at("m").get<long long>();
    if (n->ext_m < 1 || n->ext_r < 0 || n->ext_r >= n->ext_m)
      throw Error("extraction needs 0 <= r < m");
    n->child = jside(j.at("of"));
  } else if (kind == "const") {
    n->kind = K::Const;
    n->coeff = jcoeff(j.at("value"));
  } else {
    throw Error("unknown side kind '" + kind + "'");
  }
  return n;
}

// -------------------------------------------------------------- evaluation

QSeries eval_node(const SideNode& n, long long order);

QSeries eval_product(const SideNode& n, long long order) {
  // widen the working order by whatever the prefactor and negative-dipping
  // factors can shift contributions down
  Rat neg = std::min(Rat(0), n.prefactor.exp);
  for (size_t i = 0; i < n.pfactors.size(); ++i)
    if (n.ppow[i] > 0) neg += poch_negative_shift(n.pfactors[i]) * n.ppow[i];
  const long long W = order + (neg < 0 ? rat_ceil_ll(-neg) : 0);

  QSeries acc = n.prefactor.series();
  for (size_t i = 0; i < n.pfactors.size(); ++i) {
    QSeries p = poch_expand(n.pfactors[i], W).pow_int(n.ppow[i], W);
    acc = acc.mul_cap(p, W);
  }
  return acc;
}

QSeries eval_node(const SideNode& n, long long order) {
  using K = SideNode::Kind;
  switch (n.kind) {
    case K::Sum:
      return eval_sum_term(n.term, order);
    case K::Product:
      return eval_product(n, order);
    case K::CT:
      return ct_product(n.zfactors, order);
    case K::GR:
      return gr_rhs(n.gr, order);
    case K::ExprText:
      return eval_expr(n.expr, order);
    case K::CF:
      return n.cf_depth ? cubic_cf(*n.cf_depth, order) : cubic_cf_auto(order);
    case K::Add: {
      QSeries acc = QSeries::zero(1, order);
      for (const auto& c : n.of) acc = acc + eval_node(*c, order);
      return acc;
    }
    case K::Mul: {
      QSeries acc = QSeries::constant(Eis(1));
      for (const auto& c : n.of) acc = acc.mul_cap(eval_node(*c, order), order);
      return acc;
    }
    case K::Scale:
      return eval_node(*n.child, order).times(n.coeff);
    case K::Pow:
      return eval_node(*n.child, order).pow_int(n.ipow, order);
    case K::Subst: {
      long long corder = rat_ceil_ll(rat(order) / n.subst_m);
      return eval_node(*n.child, corder).subst_power(n.subst_m);
    }
    case K::Twist:
      return eval_node(*n.child, order).subst_unit_root(n.twist_j);
    case K::Extract:
      return eval_node(*n.child, order).extract_arith(n.ext_r, n.ext_m);
    case K::Const:
      return QSeries::constant(n.coeff);
  }
  throw Error("unreachable side kind");
}

void check_rational(const QSeries& s, long long order, const std::string& what) {
  const long long lim = order * s.scale();
  for (size_t i = 0; i < s.window().size(); ++i) {
    long long e = s.min_exp() + static_cast<long long>(i);
    if (e >= lim) break;
    if (!s.window()[i].is_rational())
      throw Error(what + " has a non-rational coefficient " + s.window()[i].str() + " at q^" +
                  rat_str(rat(e, s.scale())));
  }
}

std::string normalize_id(const std::string& id) {
  std::string s = id;
  for (char& c : s)
    if (c == '_') c = '-';
  return s;
}

}  // namespace

QSeries eval_side(const SidePtr& s, long long order) {
  if (!s) throw Error("empty side");
  for (long long slack : {0, 4, 16, 64, 256}) {
    QSeries r = eval_node(*s, order + slack);
    if (r.trunc() >= order * r.scale()) {
      r.truncate_q(order);
      return r;
    }
  }
  throw Error("side needs unexpectedly deep working precision");
}

// ------------------------------------------------------------------ loading

std::string Catalog::default_path() {
  if (const char* env = std::getenv("QRR_CATALOG"); env && *env) return env;
  namespace fs = std::filesystem;
  if (fs::exists("catalog.json")) return "catalog.json";
  if (fs::exists("data/catalog.json")) return "data/catalog.json";
#ifdef QRR_SOURCE_DATA_DIR
  return std::string(QRR_SOURCE_DATA_DIR) + "/catalog.json";
#else
  throw Error("no catalog found: set QRR_CATALOG or provide ./catalog.json");
#endif
}

Catalog Catalog::load_default() { return load(default_path()); }

Catalog Catalog::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open catalog file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return load_text(text.str(), path);
}

Catalog Catalog::load_text(const std::string& json_text, const std::string& what) {
  njson doc;
  try {
    doc = njson::parse(json_text);
  } catch (const std::exception& ex) {
    throw Error("catalog '" + what + "': " + ex.what());
  }
  if (!doc.is_object() || !doc.contains("entries"))
    throw Error("catalog '" + what + "': expected {\"entries\": [...]}");

  Catalog cat;
  for (const auto& je : doc.at("entries")) {
    std::string id = je.value("id", std::string());
    try {
      if (id.empty()) throw Error("missing id");
      Entry e;
      e.id = id;
      e.status = je.at("status").get<std::string>();
      if (e.status != "theorem" && e.status != "proof-step" && e.status != "conjecture" &&
          e.status != "negative-control")
        throw Error("unknown status '" + e.status + "'");
      e.ring = je.value("ring", std::string("rational"));
      if (e.ring != "rational" && e.ring != "eisenstein")
        throw Error("unknown ring '" + e.ring + "'");
      e.default_order = je.value("default_order", 100LL);
      if (e.default_order < 1) throw Error("default_order must be positive");
      e.notes = je.value("notes", std::string());
      e.lhs = jside(je.at("lhs"));
      e.rhs = jside(je.at("rhs"));
      std::string key = normalize_id(e.id);
      if (cat.index_.count(key)) throw Error("duplicate id");
      cat.index_[key] = cat.entries_.size();
      cat.entries_.push_back(std::move(e));
    } catch (const std::exception& ex) {
      throw Error("catalog entry '" + id + "': " + ex.what());
    }
  }
  return cat;
}

bool Catalog::has(const std::string& id) const { return index_.count(normalize_id(id)) > 0; }

const Entry& Catalog::get(const std::string& id) const {
  auto it = index_.find(normalize_id(id));
  if (it == index_.end()) throw Error("unknown identity '" + id + "'");
  return entries_[it->second];
}

std::vector<std::string> Catalog::ids(const std::string& status) const {
  std::vector<std::string> out;
  for (const auto& e : entries_)
    if (status.empty() || e.status == status) out.push_back(e.id);
  return out;
}

// ------------------------------------------------------------ verification

Report Catalog::verify(const std::string& id, long long order) const {
  const Entry& e = get(id);
  Report rep;
  rep.id = e.id;
  rep.status = e.status;
  rep.order = order > 0 ? order : e.default_order;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    QSeries lhs = eval_side(e.lhs, rep.order);
    QSeries rhs = eval_side(e.rhs, rep.order);
    lhs.require_order(rep.order, "left side of " + e.id);
    rhs.require_order(rep.order, "right side of " + e.id);
    if (e.ring == "rational") {
      check_rational(lhs, rep.order, "left side of " + e.id);
      check_rational(rhs, rep.order, "right side of " + e.id);
    }
    rep.first_mismatch = QSeries::mismatch_below(lhs, rhs, rep.order);
    rep.pass = !rep.first_mismatch.has_value();
  } catch (const std::exception& ex) {
    rep.pass = false;
    rep.error = ex.what();
  }
  const auto t1 = std::chrono::steady_clock::now();
  rep.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return rep;
}

std::vector<Report> Catalog::verify_all(const std::string& status, long long order,
                                        int jobs) const {
  std::vector<size_t> pick;
  for (size_t i = 0; i < entries_.size(); ++i) {
    const Entry& e = entries_[i];
    if (status.empty() ? e.status != "negative-control" : e.status == status) pick.push_back(i);
  }
  std::sort(pick.begin(), pick.end(),
            [&](size_t a, size_t b) { return entries_[a].id < entries_[b].id; });

  std::vector<Report> out(pick.size());
  const int n_jobs = std::max(1, jobs);
  if (n_jobs == 1) {
    for (size_t k = 0; k < pick.size(); ++k) out[k] = verify(entries_[pick[k]].id, order);
    return out;
  }
  std::atomic<size_t> next{0};
  auto work = [&] {
    while (true) {
      size_t k = next.fetch_add(1);
      if (k >= pick.size()) break;
      out[k] = verify(entries_[pick[k]].id, order);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < n_jobs; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return out;
}

// --------------------------------------------------------------- reporting

std::string report_json(const Report& r) {
  njson o;
  o["id"] = r.id;
  o["order"] = r.order;
  o["verdict"] = r.pass ? "pass" : "fail";
  if (r.first_mismatch) {
    const Mismatch& m = *r.first_mismatch;
    o["first_mismatch"] = njson{{"exp_num", rat_num_ll(m.exp)},
                                {"exp_den", rat_den_ll(m.exp)},
                                {"lhs", m.lhs.str()},
                                {"rhs", m.rhs.str()}};
  } else {
    o["first_mismatch"] = nullptr;
  }
  o["ms"] = r.ms;
  o["status"] = r.status;
  if (!r.error.empty()) o["error"] = r.error;
  return o.dump();
}

std::string report_human(const Report& r) {
  std::ostringstream os;
  os << r.id;
  for (size_t i = r.id.size(); i < 24; ++i) os << ' ';
  os << (r.status + std::string(r.status.size() < 18 ? 18 - r.status.size() : 1, ' '));
  os << "order " << r.order << "  " << (r.pass ? "PASS" : "FAIL");
  os << "  (" << static_cast<long long>(r.ms + 0.5) << " ms)";
  if (r.first_mismatch) {
    const Mismatch& m = *r.first_mismatch;
    os << "  first mismatch at q^" << rat_str(m.exp) << ": lhs " << m.lhs.str() << ", rhs "
       << m.rhs.str();
  }
  if (!r.error.empty()) os << "  error: " << r.error;
  return os.str();
}

}  // namespace qrr
