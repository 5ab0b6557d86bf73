// Command-line front end: verify catalog identities, expand expressions,
// and fit truncated series as infinite products.
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qrr/catalog.hpp"
#include "qrr/expr.hpp"
#include "qrr/prodfit.hpp"

namespace {

using njson = nlohmann::ordered_json;

qrr::Catalog load_catalog(const std::string& path) {
  return path.empty() ? qrr::Catalog::load_default() : qrr::Catalog::load(path);
}

njson rat_json(const qrr::Rat& r) {
  if (qrr::rat_is_int(r)) return njson(qrr::rat_num_ll(r));
  return njson(qrr::rat_str(r));
}

int cmd_verify(const std::string& catalog, const std::string& id, long long order, bool json) {
  qrr::Catalog cat = load_catalog(catalog);
  qrr::Report rep = cat.verify(id, order);
  std::cout << (json ? qrr::report_json(rep) : qrr::report_human(rep)) << "\n";
  return rep.pass ? 0 : 1;
}

int cmd_verify_all(const std::string& catalog, const std::string& status, long long order,
                   int jobs, bool json) {
  qrr::Catalog cat = load_catalog(catalog);
  std::vector<qrr::Report> reports = cat.verify_all(status, order, jobs);
  bool all = true;
  size_t passed = 0;
  for (const auto& rep : reports) {
    std::cout << (json ? qrr::report_json(rep) : qrr::report_human(rep)) << "\n";
    all = all && rep.pass;
    passed += rep.pass ? 1 : 0;
  }
  if (!json)
    std::cout << passed << "/" << reports.size() << " identities verified\n";
  return all ? 0 : 1;
}

int cmd_expand(const std::string& text, long long order, bool json) {
  qrr::Expr e = qrr::parse_expr(text);
  qrr::QSeries s = qrr::eval_expr(e, order);
  if (!json) {
    std::cout << s.str() << "\n";
    return 0;
  }
  njson terms = njson::array();
  for (size_t i = 0; i < s.window().size(); ++i) {
    const qrr::Eis& c = s.window()[i];
    if (c.is_zero()) continue;
    qrr::Rat exp = qrr::rat(s.min_exp() + static_cast<long long>(i), s.scale());
    terms.push_back(njson{{"exp_num", qrr::rat_num_ll(exp)},
                          {"exp_den", qrr::rat_den_ll(exp)},
                          {"coeff", c.str()}});
  }
  njson out{{"order", order}, {"terms", terms}};
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_prodfit(const std::string& text, long long N, long long modulus) {
  qrr::Expr e = qrr::parse_expr(text);
  qrr::QSeries s = qrr::eval_expr(e, N + 1);
  qrr::ProductExponents pe = qrr::prodfit(s, N);

  njson exps = njson::array();
  for (const auto& r : pe.e) exps.push_back(rat_json(r));
  njson cands = njson::array();
  for (long long m : qrr::period_candidates(pe)) cands.push_back(m);
  njson out{
      {"N", N}, {"exponents", exps}, {"integral", pe.integral}, {"period_candidates", cands}};
  if (modulus > 0) {
    njson classes = njson::array();
    for (const auto& f : qrr::classify(pe, modulus))
      classes.push_back(njson{{"a", f.a}, {"m", f.m}, {"r", rat_json(f.r)}});
    out["classes"] = classes;
  }
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_list(const std::string& catalog, const std::string& status, bool json) {
  qrr::Catalog cat = load_catalog(catalog);
  if (json) {
    njson out = njson::array();
    for (const auto& e : cat.entries()) {
      if (!status.empty() && e.status != status) continue;
      out.push_back(njson{{"id", e.id},
                          {"status", e.status},
                          {"ring", e.ring},
                          {"default_order", e.default_order},
                          {"notes", e.notes}});
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  for (const auto& e : cat.entries()) {
    if (!status.empty() && e.status != status) continue;
    std::printf("%-26s %-18s %-11s order %-5lld %s\n", e.id.c_str(), e.status.c_str(),
                e.ring.c_str(), e.default_order, e.notes.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact q-series identity verifier"};
  app.require_subcommand(1);
  std::string catalog;
  app.add_option("--catalog", catalog, "catalog file (default: QRR_CATALOG or ./catalog.json)");

  std::string id, status, expr_text;
  long long order = 0, N = 60, modulus = 0;
  int jobs = 1;
  bool json = false;

  CLI::App* verify = app.add_subcommand("verify", "verify one identity");
  verify->add_option("--id", id, "identity id")->required();
  verify->add_option("--order", order, "truncation order (default: the entry's)");
  verify->add_flag("--json", json, "emit a JSON report line");

  const auto status_check =
      CLI::IsMember({"theorem", "proof-step", "conjecture", "negative-control"});

  CLI::App* vall = app.add_subcommand("verify-all", "verify a set of identities");
  vall->add_option("--status", status, "filter: theorem, proof-step, conjecture, negative-control")
      ->check(status_check);
  vall->add_option("--order", order, "truncation order (default: per-entry)");
  vall->add_option("--jobs", jobs, "worker threads");
  vall->add_flag("--json", json, "emit JSON report lines");

  CLI::App* expand = app.add_subcommand("expand", "expand an expression");
  expand->add_option("--expr", expr_text, "expression text")->required();
  expand->add_option("--order", order, "truncation order")->required();
  expand->add_flag("--json", json, "emit JSON terms");

  CLI::App* pfit = app.add_subcommand("prodfit", "fit a series as prod (1-q^n)^(-e_n)");
  pfit->add_option("--expr", expr_text, "expression text")->required();
  pfit->add_option("--order", N, "number of exponents to recover")->required();
  pfit->add_option("--modulus", modulus, "also classify with this period");

  CLI::App* list = app.add_subcommand("list", "list catalog entries");
  list->add_option("--status", status, "filter by status")->check(status_check);
  list->add_flag("--json", json, "emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(catalog, id, order, json);
    if (vall->parsed()) return cmd_verify_all(catalog, status, order, jobs, json);
    if (expand->parsed()) return cmd_expand(expr_text, order, json);
    if (pfit->parsed()) return cmd_prodfit(expr_text, N, modulus);
    if (list->parsed()) return cmd_list(catalog, status, json);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
