#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "semirad/radii.hpp"
#include "semirad/semihilbert.hpp"
#include "semirad/types.hpp"

namespace semirad {

// The check registry: every inequality (and the one equality) relating the
// A-Euclidean operator radius of a pair, the A-numerical radius, the
// A-Crawford number and the A-operator seminorm, each evaluated as
// (lhs, rhs, slack) with direction-of-error-aware tolerances.
//
// Sup-type quantities are certified lower estimates.  For a "lhs <= rhs"
// check, lower estimates on the rhs can only make the check stricter, so
// they contribute nothing to the tolerance; estimates on the lhs contribute
// their refinement gap.  Equality checks accumulate the gaps of both sides.

enum class CheckId {
  TH1_LOWER,
  TH1_UPPER,
  COR_SELFADJ_LOWER,
  COR_PCOR,
  COR_COR1,
  TH_PRODUCT,
  PROP_RANKONE,
  LEM_BUZANO,
  TH_THEOREM1,
  COR_THEOREM1_T,
  TH3,
  TH3_ALPHA2,
  TH3_SINGLE,
  TH2,
  COR2,
  EQ5,
  TH4_LOWER,
  TH4_UPPER,
  REMARK_CHAIN,
  BOHR_SCALAR,
  SANDWICH,
};

enum class CheckKind { LessEq, Equality };

struct CheckInfo {
  CheckId id;
  const char* name;
  const char* description;
  const char* signature;      // operand signature
  const char* param_domain;   // parameter domain, "none" if unparametrized
};

// Complete, stable-ordered catalog; 21 entries.
const std::vector<CheckInfo>& list_checks();
const CheckInfo& check_info(CheckId id);
CheckId check_id_from_string(const std::string& name);

struct CheckParams {
  std::vector<Complex> alphas;      // empty: use the check's default grid
  std::vector<double> bohr_values;  // BOHR_SCALAR sample, empty: {1,2,3}
  double bohr_r = 2.0;
  std::uint64_t buzano_seed = 1;
  int buzano_samples = 10000;
};

struct BoundReport {
  CheckId check = CheckId::SANDWICH;
  CheckKind kind = CheckKind::LessEq;
  std::map<std::string, Complex> params;  // named scalars (alpha, aux values)
  std::uint64_t digest_a = 0, digest_b = 0, digest_c = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  // rhs - lhs for <= checks, |lhs - rhs| for equalities; two-sided checks
  // (COR_PCOR, SANDWICH, PROP_RANKONE below the equality branch) report the
  // binding side's slack with the inner value in params
  double slack = 0.0;
  double certified_gap = 0.0;  // propagated optimizer gaps
  double scale = 1.0;          // max(1, |lhs|, |rhs|)
  double tolerance = 1e-7;     // relative tolerance applied on top of the gap
  bool pass = false;
};

// Per-instance memoization of reductions, adjoints and radius results, so a
// trial evaluating all 21 checks never recomputes a quantity.  References
// returned stay valid for the cache lifetime.
class EvalCache {
 public:
  EvalCache(const AContext& ctx, RadiusConfig cfg = {});
  ~EvalCache();
  EvalCache(const EvalCache&) = delete;
  EvalCache& operator=(const EvalCache&) = delete;

  const AContext& context() const;
  const RadiusConfig& radius_config() const;

  const ComplexMatrix& reduced(const ComplexMatrix& ambient);
  const ComplexMatrix& sharp(const ComplexMatrix& ambient);
  const RadiusResult& w(const ComplexMatrix& ambient);
  const RadiusResult& c(const ComplexMatrix& ambient);
  double norm(const ComplexMatrix& ambient);
  const RadiusResult& we(const ComplexMatrix& b, const ComplexMatrix& c);
  double sem_pair(const ComplexMatrix& b, const ComplexMatrix& c);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Evaluate one check.  `b`/`c` may be null where the signature does not use
// them.  Parametrized checks scan their alpha grid and report the binding
// (smallest-margin) instance.  `tolerance` is the relative tolerance of the
// pass rule; campaigns may override it per check.
BoundReport evaluate(CheckId check, const AContext& ctx, const ComplexMatrix* b,
                     const ComplexMatrix* c, const CheckParams& params = {},
                     EvalCache* cache = nullptr, double tolerance = 1e-7);

// Default parameter grids (campaigns append per-trial random draws).
std::vector<Complex> default_alpha_grid();          // for alpha != 0 checks
std::vector<Complex> default_unit_interval_grid();  // for alpha in [0,1]

}  // namespace semirad
