#pragma once
// JSON-backed catalog of q-series identities plus the verification runner.
//
// Each entry names two sides; a side is an evaluation tree whose leaves are
// multidimensional q-hypergeometric sums, infinite products, constant-term
// integrands, residue-sum expansions, the cubic continued fraction, or text
// expressions, combined by add/mul/scale/pow/substitution/root-twist/
// dissection nodes.  Verification evaluates both sides as truncated series
// and reports the first mismatching coefficient, if any.
#include "qrr/ctengine.hpp"
#include "qrr/expr.hpp"
#include "qrr/multisum.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qrr {

struct SideNode;
using SidePtr = std::shared_ptr<const SideNode>;

struct SideNode {
  enum class Kind {
    Sum,      // one q-hypergeometric sum term
    Product,  // prefactor * prod of Pochhammer factors to integer powers
    CT,       // z^0 coefficient of a product of z-factors
    GR,       // sum-of-residues expansion of a z^0 coefficient
    ExprText, // expression-language leaf
    CF,       // Ramanujan cubic continued fraction
    Add, Mul, // combinators over child sides
    Scale,    // coeff * child
    Pow,      // child ^ ipow
    Subst,    // q -> q^m in child
    Twist,    // coefficient of q^n gains w^(j n)
    Extract,  // keep exponents congruent to r mod m
    Const,    // constant scalar
  };
  Kind kind = Kind::Const;

  SumTerm term;                      // Sum
  std::vector<PochFactor> pfactors;  // Product: pfactors[i] ^ ppow[i]
  std::vector<long long> ppow;
  MonomialArg prefactor;             // Product
  std::vector<ZFactor> zfactors;     // CT
  GRSpec gr;                         // GR
  Expr expr;                         // ExprText
  std::optional<int> cf_depth;       // CF: fixed depth, or auto when absent
  std::vector<SidePtr> of;           // Add / Mul children
  SidePtr child;                     // Scale/Pow/Subst/Twist/Extract child
  Eis coeff = Eis(1);                // Scale factor / Const value
  long long ipow = 1;                // Pow
  Rat subst_m = Rat(1);              // Subst
  int twist_j = 0;                   // Twist
  long long ext_r = 0, ext_m = 1;    // Extract
};

// evaluate a side to a series correct below q^order (retries internally at a
// deeper working order when combinators eat precision)
QSeries eval_side(const SidePtr& s, long long order);

struct Entry {
  std::string id;
  std::string status;  // theorem | proof-step | conjecture | negative-control
  std::string ring;    // rational | eisenstein
  long long default_order = 100;
  std::string notes;
  SidePtr lhs, rhs;
};

struct Report {
  std::string id;
  std::string status;
  long long order = 0;
  bool pass = false;
  std::optional<Mismatch> first_mismatch;
  std::string error;  // set when a side failed to evaluate
  double ms = 0;
};

std::string report_json(const Report& r);   // one JSON object per line
std::string report_human(const Report& r);  // aligned one-line summary

class Catalog {
 public:
  // resolution order: QRR_CATALOG env var, ./catalog.json,
  // ./data/catalog.json, then the source-tree default baked in at build time
  static std::string default_path();
  static Catalog load_default();
  static Catalog load(const std::string& path);
  static Catalog load_text(const std::string& json_text, const std::string& what);

  const std::vector<Entry>& entries() const { return entries_; }
  bool has(const std::string& id) const;
  // id lookup treats '-' and '_' as the same character
  const Entry& get(const std::string& id) const;
  std::vector<std::string> ids(const std::string& status = {}) const;

  // order <= 0 means the entry's default_order
  Report verify(const std::string& id, long long order) const;
  // runs entries matching `status` (all but negative-control when empty) and
  // returns reports sorted by id, independent of the number of jobs
  std::vector<Report> verify_all(const std::string& status, long long order, int jobs) const;

 private:
  std::vector<Entry> entries_;
  std::map<std::string, size_t> index_;
};

}  // namespace qrr
