#include "semirad/campaign.hpp"

#include <chrono>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <ostream>
#include <sstream>

#include "semirad/matrix_io.hpp"
#include "semirad/rng.hpp"

namespace semirad {

using nlohmann::ordered_json;

RankPolicy rank_policy_from_string(const std::string& s) {
  if (s == "full") return RankPolicy::Full;
  if (s == "deficient") return RankPolicy::Deficient;
  if (s == "both") return RankPolicy::Both;
  throw ConfigInvalidError("unknown rank policy: " + s);
}

const char* to_string(RankPolicy p) {
  switch (p) {
    case RankPolicy::Full: return "full";
    case RankPolicy::Deficient: return "deficient";
    case RankPolicy::Both: return "both";
  }
  return "both";
}

void validate(const CampaignConfig& cfg) {
  if (cfg.dims.empty()) throw ConfigInvalidError("campaign: dims must be non-empty");
  for (int d : cfg.dims)
    if (d < 1 || d > 64)
      throw ConfigInvalidError("campaign: dims must lie in [1, 64]");
  if (cfg.trials_per_cell < 1)
    throw ConfigInvalidError("campaign: trials_per_cell must be >= 1");
  if (!(cfg.scale > 0.0) || cfg.scale > 1e3)
    throw ConfigInvalidError("campaign: scale must lie in (0, 1e3]");
  if (cfg.buzano_samples < 1)
    throw ConfigInvalidError("campaign: buzano_samples must be >= 1");
  for (const auto& [name, tol] : cfg.tolerance_overrides) {
    try {
      check_id_from_string(name);
    } catch (const BadParameterError& e) {
      throw ConfigInvalidError(std::string("campaign: ") + e.what());
    }
    if (!(tol >= 0.0))
      throw ConfigInvalidError("campaign: tolerance override must be >= 0");
  }
}

namespace {

int deficient_rank(int dim) { return std::max(1, (dim + 1) / 2); }

struct TrialOperands {
  ComplexMatrix b, c;
  ComplexMatrix rank_one;   // from a fresh A-unit vector
  ComplexMatrix b_self, c_self;  // A-selfadjoint derivatives of b, c
};

// deterministic kind schedule so degenerate shapes recur throughout a cell
OperandKind slot_kind(int trial) {
  switch (trial % 8) {
    case 1: return OperandKind::Generic;       // duplicated below: B == C
    case 2: return OperandKind::Zero;          // C = 0
    case 3: return OperandKind::ASelfAdjoint;
    case 4: return OperandKind::RankOneA;
    case 5: return OperandKind::Nilpotent;
    case 6: return OperandKind::CommutingPair;
    default: return OperandKind::Generic;
  }
}

TrialOperands make_operands(const AContext& ctx, int trial, double scale,
                            std::uint64_t base) {
  TrialOperands ops;
  const OperandKind kind = slot_kind(trial);
  if (trial % 8 == 1) {
    ops.b = random_compatible(ctx, OperandKind::Generic,
                              derive_stream(base, {1}), scale);
    ops.c = ops.b;
  } else if (trial % 8 == 4) {
    ops.b = random_compatible(ctx, OperandKind::RankOneA,
                              derive_stream(base, {1}), scale);
    ops.c = random_compatible(ctx, OperandKind::Generic,
                              derive_stream(base, {2}), scale);
  } else if (trial % 8 == 5) {
    ops.b = random_compatible(ctx, OperandKind::Nilpotent,
                              derive_stream(base, {1}), scale);
    ops.c = random_compatible(ctx, OperandKind::Generic,
                              derive_stream(base, {2}), scale);
  } else {
    auto [b, c] = random_operand_pair(ctx, kind, base, scale);
    ops.b = std::move(b);
    ops.c = std::move(c);
  }
  ops.rank_one = rank_one_a(ctx, random_a_unit(ctx, derive_stream(base, {3})));
  ops.b_self = 0.5 * (ops.b + a_adjoint(ctx, ops.b));
  ops.c_self = 0.5 * (ops.c + a_adjoint(ctx, ops.c));
  return ops;
}

bool uses_pair(CheckId id) {
  switch (id) {
    case CheckId::TH1_LOWER:
    case CheckId::TH1_UPPER:
    case CheckId::COR_SELFADJ_LOWER:
    case CheckId::TH_PRODUCT:
    case CheckId::TH_THEOREM1:
    case CheckId::TH3:
    case CheckId::TH3_ALPHA2:
    case CheckId::TH2:
    case CheckId::COR2:
    case CheckId::EQ5:
    case CheckId::TH4_LOWER:
    case CheckId::TH4_UPPER:
      return true;
    default:
      return false;
  }
}

bool uses_unit_interval_alpha(CheckId id) {
  return id == CheckId::TH4_LOWER || id == CheckId::TH4_UPPER;
}

bool uses_alpha(CheckId id) {
  switch (id) {
    case CheckId::PROP_RANKONE:
    case CheckId::LEM_BUZANO:
    case CheckId::TH_THEOREM1:
    case CheckId::COR_THEOREM1_T:
    case CheckId::TH3:
    case CheckId::TH3_SINGLE:
    case CheckId::TH4_LOWER:
    case CheckId::TH4_UPPER:
      return true;
    default:
      return false;
  }
}

ordered_json radius_to_json(const RadiusConfig& r) {
  return ordered_json{{"n_theta", r.n_theta},
                      {"refine_rounds", r.refine_rounds},
                      {"max_candidates", r.max_candidates},
                      {"pair_grid_t", r.pair_grid_t},
                      {"pair_grid_phi", r.pair_grid_phi},
                      {"pair_grid_theta", r.pair_grid_theta},
                      {"pair_max_iter", r.pair_max_iter},
                      {"pair_random_seeds", r.pair_random_seeds},
                      {"pair_tol", r.pair_tol}};
}

RadiusConfig radius_from_json(const ordered_json& j) {
  RadiusConfig r;
  static const char* keys[] = {"n_theta",       "refine_rounds",
                               "max_candidates", "pair_grid_t",
                               "pair_grid_phi",  "pair_grid_theta",
                               "pair_max_iter",  "pair_random_seeds",
                               "pair_tol"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known |= it.key() == k;
    if (!known) throw SchemaMismatchError("radius config: unknown field " + it.key());
  }
  if (j.contains("n_theta")) r.n_theta = j["n_theta"].get<int>();
  if (j.contains("refine_rounds")) r.refine_rounds = j["refine_rounds"].get<int>();
  if (j.contains("max_candidates")) r.max_candidates = j["max_candidates"].get<int>();
  if (j.contains("pair_grid_t")) r.pair_grid_t = j["pair_grid_t"].get<int>();
  if (j.contains("pair_grid_phi")) r.pair_grid_phi = j["pair_grid_phi"].get<int>();
  if (j.contains("pair_grid_theta"))
    r.pair_grid_theta = j["pair_grid_theta"].get<int>();
  if (j.contains("pair_max_iter")) r.pair_max_iter = j["pair_max_iter"].get<int>();
  if (j.contains("pair_random_seeds"))
    r.pair_random_seeds = j["pair_random_seeds"].get<int>();
  if (j.contains("pair_tol")) r.pair_tol = j["pair_tol"].get<double>();
  return r;
}

ordered_json matrix_to_json(const ComplexMatrix& m) {
  return ordered_json::parse(format_matrix_json(m));
}

}  // namespace

CampaignReport run_campaign(const CampaignConfig& cfg, std::ostream* csv) {
  validate(cfg);
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<CheckId> checks = cfg.checks;
  if (checks.empty())
    for (const auto& info : list_checks()) checks.push_back(info.id);

  CampaignReport report;
  report.config = cfg;
  report.rng_name = kRngName;
  std::map<CheckId, CheckAggregate> agg;
  for (CheckId id : checks) {
    agg[id].min_slack = std::numeric_limits<double>::infinity();
  }

  double refine_lower_min = std::numeric_limits<double>::infinity();
  double refine_upper_min = std::numeric_limits<double>::infinity();
  double remark_ii_worst = -std::numeric_limits<double>::infinity();
  long remark_ii_hits = 0;

  if (csv)
    *csv << "dim,rank,trial,check,alpha_re,alpha_im,lhs,rhs,slack,"
            "certified_gap,pass\n";

  for (std::size_t di = 0; di < cfg.dims.size(); ++di) {
    const int dim = cfg.dims[di];
    std::vector<int> rank_cells;
    if (cfg.ranks == RankPolicy::Full) rank_cells = {dim};
    else if (cfg.ranks == RankPolicy::Deficient) rank_cells = {deficient_rank(dim)};
    else rank_cells = {dim, deficient_rank(dim)};

    for (std::size_t ri = 0; ri < rank_cells.size(); ++ri) {
      const int rank = rank_cells[ri];
      for (int trial = 0; trial < cfg.trials_per_cell; ++trial) {
        const std::uint64_t base = derive_stream(
            cfg.seed, {di, ri, static_cast<std::uint64_t>(trial)});
        const ComplexMatrix a = random_psd(dim, rank, derive_stream(base, {0}));
        const AContext ctx = make_context(a, -1.0, cfg.residual_tol);
        const TrialOperands ops = make_operands(ctx, trial, cfg.scale, base);

        // per-trial alpha grids: the fixed values plus random draws
        std::vector<Complex> alphas = default_alpha_grid();
        {
          SplitMix64 g(derive_stream(base, {4}));
          for (int k = 0; k < 8; ++k) {
            Complex v(g.uniform(-3.0, 3.0), g.uniform(-3.0, 3.0));
            while (std::abs(v) < 0.1)
              v = Complex(g.uniform(-3.0, 3.0), g.uniform(-3.0, 3.0));
            alphas.push_back(v);
          }
        }
        std::vector<Complex> alphas01 = default_unit_interval_grid();
        {
          SplitMix64 g(derive_stream(base, {5}));
          for (int k = 0; k < 4; ++k) alphas01.emplace_back(g.uniform(), 0.0);
        }
        std::vector<double> bohr_values;
        double bohr_r;
        {
          SplitMix64 g(derive_stream(base, {6}));
          const int k = 2 + static_cast<int>(g.next() % 5);
          const bool equal_case = trial % 4 == 0;
          const double v0 = g.uniform(0.0, 10.0);
          for (int i = 0; i < k; ++i)
            bohr_values.push_back(equal_case ? v0 : g.uniform(0.0, 10.0));
          bohr_r = g.uniform(1.0, 4.0);
        }
        const std::uint64_t buzano_seed = derive_stream(base, {7});

        EvalCache cache(ctx, cfg.radius);
        for (CheckId id : checks) {
          const CheckInfo& info = check_info(id);
          CheckParams p;
          p.buzano_seed = buzano_seed;
          p.buzano_samples = cfg.buzano_samples;
          if (uses_alpha(id))
            p.alphas = uses_unit_interval_alpha(id) ? alphas01 : alphas;
          if (id == CheckId::BOHR_SCALAR) {
            p.bohr_values = bohr_values;
            p.bohr_r = bohr_r;
          }

          const ComplexMatrix* bp = &ops.b;
          const ComplexMatrix* cp = nullptr;
          if (uses_pair(id)) cp = &ops.c;
          if (id == CheckId::COR_SELFADJ_LOWER) {
            bp = &ops.b_self;
            cp = &ops.c_self;
          } else if (id == CheckId::PROP_RANKONE) {
            bp = &ops.rank_one;
          } else if (id == CheckId::LEM_BUZANO || id == CheckId::BOHR_SCALAR) {
            bp = nullptr;
          }

          double tol = 1e-7;
          if (auto it = cfg.tolerance_overrides.find(info.name);
              it != cfg.tolerance_overrides.end())
            tol = it->second;

          const BoundReport r = evaluate(id, ctx, bp, cp, p, &cache, tol);

          CheckAggregate& ag = agg[id];
          ag.count += 1;
          ag.pass_count += r.pass ? 1 : 0;
          ag.min_slack = std::min(ag.min_slack, r.slack);
          ag.sum_slack += r.slack;
          ag.max_certified_gap = std::max(ag.max_certified_gap, r.certified_gap);

          if (csv) {
            Complex alpha(0, 0);
            if (auto it = r.params.find("alpha"); it != r.params.end())
              alpha = it->second;
            *csv << dim << ',' << rank << ',' << trial << ',' << info.name
                 << ',' << alpha.real() << ',' << alpha.imag() << ',' << r.lhs
                 << ',' << r.rhs << ',' << r.slack << ',' << r.certified_gap
                 << ',' << (r.pass ? 1 : 0) << '\n';
          }

          if (id == CheckId::TH1_LOWER) {
            const double half = r.params.at("half_w_sq").real();
            refine_lower_min = std::min(refine_lower_min,
                                        (r.lhs - half) / std::max(1.0, r.scale));
            // near-equality of the lower bound forces the two rotated radii
            // to coincide (remark after the theorem, forward direction only)
            const double eq_tol = 1e-7 * r.scale;
            const double excess = r.rhs - half;
            const double mxw =
                std::max(r.params.at("w_b").real(), r.params.at("w_c").real());
            if (std::abs(excess) <= eq_tol && mxw > 1e-9 * r.scale) {
              ++remark_ii_hits;
              const double implied = 2.0 * (std::max(excess, 0.0) + eq_tol) / mxw;
              remark_ii_worst = std::max(
                  remark_ii_worst, r.params.at("delta_w").real() - implied);
            }
          } else if (id == CheckId::TH1_UPPER) {
            const double loose = r.params.at("remark_upper_rhs").real();
            refine_upper_min = std::min(refine_upper_min,
                                        (loose - r.rhs) / std::max(1.0, r.scale));
          }

          if (!r.pass) {
            FailureRecord f;
            f.check = info.name;
            std::ostringstream sp;
            sp << "seed=" << cfg.seed << "/dim=" << dim << "/rank=" << rank
               << "/trial=" << trial;
            f.seed_path = sp.str();
            f.residual_tol = cfg.residual_tol;
            f.tolerance = tol;
            f.radius = cfg.radius;
            if (auto it = r.params.find("alpha"); it != r.params.end())
              f.alpha = it->second;
            if (id == CheckId::BOHR_SCALAR) {
              f.bohr_values = bohr_values;
              f.bohr_r = bohr_r;
            }
            f.buzano_seed = buzano_seed;
            f.buzano_samples = cfg.buzano_samples;
            f.a = ctx.a;
            f.b = bp ? *bp : ComplexMatrix::Zero(dim, dim);
            if (cp) f.c = *cp;
            f.lhs = r.lhs;
            f.rhs = r.rhs;
            report.failures.push_back(std::move(f));
          }
        }
      }
    }
  }

  for (const auto& info : list_checks())
    if (auto it = agg.find(info.id); it != agg.end())
      report.per_check.emplace_back(info.id, it->second);

  report.extra_stats["remark_refine_lower_min_norm_slack"] =
      std::isfinite(refine_lower_min) ? refine_lower_min : 0.0;
  report.extra_stats["remark_refine_upper_min_norm_slack"] =
      std::isfinite(refine_upper_min) ? refine_upper_min : 0.0;
  report.extra_stats["remark_ii_antecedent_count"] =
      static_cast<double>(remark_ii_hits);
  report.extra_stats["remark_ii_max_violation"] =
      remark_ii_hits ? remark_ii_worst : 0.0;

  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

std::string format_campaign_report(const CampaignReport& report) {
  ordered_json j;
  j["schema"] = kCampaignSchema;
  j["version"] = report.version;
  j["rng"] = report.rng_name;

  ordered_json cfg;
  cfg["dims"] = report.config.dims;
  cfg["ranks"] = to_string(report.config.ranks);
  cfg["trials_per_cell"] = report.config.trials_per_cell;
  ordered_json names = ordered_json::array();
  if (report.config.checks.empty()) {
    names = "all";
  } else {
    for (CheckId id : report.config.checks) names.push_back(check_info(id).name);
  }
  cfg["checks"] = names;
  cfg["seed"] = report.config.seed;
  cfg["tolerance_overrides"] = report.config.tolerance_overrides;
  cfg["residual_tol"] = report.config.residual_tol;
  cfg["scale"] = report.config.scale;
  cfg["buzano_samples"] = report.config.buzano_samples;
  cfg["radius"] = radius_to_json(report.config.radius);
  j["config"] = std::move(cfg);

  ordered_json per;
  for (const auto& [id, ag] : report.per_check) {
    per[check_info(id).name] = ordered_json{
        {"count", ag.count},
        {"pass_count", ag.pass_count},
        {"min_slack", ag.min_slack},
        {"mean_slack", ag.mean_slack()},
        {"max_certified_gap", ag.max_certified_gap}};
  }
  j["per_check"] = std::move(per);
  j["extra_stats"] = report.extra_stats;

  ordered_json fails = ordered_json::array();
  for (const auto& f : report.failures)
    fails.push_back(ordered_json::parse(format_failure_record(f)));
  j["failures"] = std::move(fails);
  j["wall_time_s"] = report.wall_time_s;
  return j.dump(2);
}

std::string format_failure_record(const FailureRecord& f) {
  ordered_json j;
  j["schema"] = kFailureSchema;
  j["check"] = f.check;
  j["seed_path"] = f.seed_path;
  j["residual_tol"] = f.residual_tol;
  j["tolerance"] = f.tolerance;
  j["radius"] = radius_to_json(f.radius);
  if (f.alpha) j["alpha"] = {f.alpha->real(), f.alpha->imag()};
  if (!f.bohr_values.empty()) {
    j["bohr_values"] = f.bohr_values;
    j["bohr_r"] = f.bohr_r;
  }
  j["buzano_seed"] = f.buzano_seed;
  j["buzano_samples"] = f.buzano_samples;
  j["a"] = matrix_to_json(f.a);
  j["b"] = matrix_to_json(f.b);
  if (f.c) j["c"] = matrix_to_json(*f.c);
  j["lhs"] = f.lhs;
  j["rhs"] = f.rhs;
  return j.dump(2);
}

FailureRecord parse_failure_record(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw SchemaMismatchError(std::string("failure record: ") + e.what());
  }
  static const char* known[] = {"schema", "check", "seed_path", "residual_tol",
                                "tolerance", "radius", "alpha", "bohr_values",
                                "bohr_r", "buzano_seed", "buzano_samples",
                                "a", "b", "c", "lhs", "rhs"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok |= it.key() == k;
    if (!ok)
      throw SchemaMismatchError("failure record: unknown field " + it.key());
  }
  if (!j.contains("schema") || j["schema"] != kFailureSchema)
    throw SchemaMismatchError("failure record: missing or unsupported schema");
  if (!j.contains("check") || !j.contains("a") || !j.contains("b"))
    throw SchemaMismatchError("failure record: check, a and b are required");

  FailureRecord f;
  f.check = j["check"].get<std::string>();
  check_id_from_string(f.check);  // validates the name
  f.seed_path = j.value("seed_path", std::string{});
  f.residual_tol = j.value("residual_tol", 1e-8);
  f.tolerance = j.value("tolerance", 1e-7);
  if (j.contains("radius")) f.radius = radius_from_json(j["radius"]);
  if (j.contains("alpha")) {
    const auto& av = j["alpha"];
    if (!av.is_array() || av.size() != 2)
      throw SchemaMismatchError("failure record: alpha must be [re, im]");
    f.alpha = Complex(av[0].get<double>(), av[1].get<double>());
  }
  if (j.contains("bohr_values"))
    f.bohr_values = j["bohr_values"].get<std::vector<double>>();
  f.bohr_r = j.value("bohr_r", 2.0);
  f.buzano_seed = j.value("buzano_seed", std::uint64_t{1});
  f.buzano_samples = j.value("buzano_samples", 10000);
  f.a = parse_matrix_json(j["a"].dump());
  f.b = parse_matrix_json(j["b"].dump());
  if (j.contains("c") && !j["c"].is_null())
    f.c = parse_matrix_json(j["c"].dump());
  f.lhs = j.value("lhs", 0.0);
  f.rhs = j.value("rhs", 0.0);
  return f;
}

BoundReport replay(const FailureRecord& record) {
  const CheckId id = check_id_from_string(record.check);
  const AContext ctx = make_context(record.a, -1.0, record.residual_tol);
  CheckParams p;
  if (record.alpha) p.alphas = {*record.alpha};
  p.bohr_values = record.bohr_values;
  p.bohr_r = record.bohr_r;
  p.buzano_seed = record.buzano_seed;
  p.buzano_samples = record.buzano_samples;
  EvalCache cache(ctx, record.radius);
  const ComplexMatrix* cp = record.c ? &*record.c : nullptr;
  const ComplexMatrix* bp =
      (id == CheckId::LEM_BUZANO || id == CheckId::BOHR_SCALAR) ? nullptr
                                                                : &record.b;
  return evaluate(id, ctx, bp, cp, p, &cache, record.tolerance);
}

std::string format_bound_report(const BoundReport& r) {
  ordered_json j;
  j["check"] = check_info(r.check).name;
  j["kind"] = r.kind == CheckKind::LessEq ? "le" : "eq";
  ordered_json params;
  for (const auto& [k, v] : r.params) params[k] = {v.real(), v.imag()};
  j["params"] = std::move(params);
  j["digest_a"] = r.digest_a;
  j["digest_b"] = r.digest_b;
  j["digest_c"] = r.digest_c;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["slack"] = r.slack;
  j["certified_gap"] = r.certified_gap;
  j["scale"] = r.scale;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  return j.dump(2);
}

}  // namespace semirad
