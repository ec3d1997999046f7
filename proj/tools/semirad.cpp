// semirad: semi-Hilbertian operator quantities and inequality campaigns.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include <semirad/campaign.hpp>
#include <semirad/ensembles.hpp>
#include <semirad/inequalities.hpp>
#include <semirad/matrix_io.hpp>
#include <semirad/numerics.hpp>
#include <semirad/oracle.hpp>
#include <semirad/radii.hpp>
#include <semirad/rng.hpp>

using namespace semirad;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

std::uint64_t env_seed() {
  if (const char* s = std::getenv("SEMIRAD_SEED")) {
    try {
      return std::stoull(s);
    } catch (...) {
      throw ConfigInvalidError("SEMIRAD_SEED is not a valid integer");
    }
  }
  return 0;
}

Complex parse_complex(const std::string& s) {
  std::istringstream in(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  in >> re;
  if (in >> comma) {
    if (comma != ',' || !(in >> im))
      throw ConfigInvalidError("expected a complex scalar as re[,im]: " + s);
  }
  return {re, im};
}

ordered_json witness_json(const ComplexVector& v) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    arr.push_back({v(i).real(), v(i).imag()});
  return arr;
}

ordered_json radius_json(const RadiusResult& r) {
  ordered_json j;
  j["value"] = r.value;
  j["witness"] = witness_json(r.witness);
  j["theta"] = r.theta;
  if (r.t) j["t"] = *r.t;
  if (r.phi) j["phi"] = *r.phi;
  j["direction"] = to_string(r.direction);
  if (std::isfinite(r.gap))
    j["certified_gap"] = r.gap;
  else
    j["certified_gap"] = nullptr;
  return j;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot write " + out_path);
    out << text << "\n";
  }
}

int cmd_context(const std::string& a_path, double rank_tol, double residual_tol) {
  const ComplexMatrix a = read_matrix_file(a_path);
  const AContext ctx = make_context(a, rank_tol, residual_tol);
  auto eig = hermitian_eig(ctx.a);
  const double lmax = eig.eigenvalues.maxCoeff();
  double lmin_pos = lmax;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (eig.eigenvalues(i) > ctx.rank_tol * lmax)
      lmin_pos = std::min(lmin_pos, eig.eigenvalues(i));
  ordered_json j;
  j["dim"] = ctx.dim();
  j["rank"] = ctx.rank;
  j["rank_tol"] = ctx.rank_tol;
  j["residual_tol"] = ctx.residual_tol;
  j["lambda_max"] = lmax;
  j["lambda_min_positive"] = lmin_pos;
  j["range_condition"] = lmax / lmin_pos;
  j["sqrt_residual"] = (ctx.sqrt_a * ctx.sqrt_a - ctx.a).norm();
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_gen(int dim, int rank, const std::string& kind, std::uint64_t seed,
            const std::string& a_path, const std::string& out,
            const std::string& out_a, double scale) {
  if (kind == "psd") {
    const ComplexMatrix a = random_psd(dim, rank, seed);
    write_matrix_file(out, a);
    return kExitOk;
  }
  ComplexMatrix a;
  if (!a_path.empty()) {
    a = read_matrix_file(a_path);
  } else {
    a = random_psd(dim, rank, derive_stream(seed, {0xA}));
  }
  const AContext ctx = make_context(a);
  const ComplexMatrix t =
      random_compatible(ctx, operand_kind_from_string(kind), seed, scale);
  write_matrix_file(out, t);
  if (!out_a.empty()) write_matrix_file(out_a, a);
  return kExitOk;
}

int cmd_radius(const std::string& a_path, const std::string& t_path,
               const std::string& quantity, const RadiusConfig& rcfg) {
  const AContext ctx = make_context(read_matrix_file(a_path));
  const ComplexMatrix t = read_matrix_file(t_path);
  RadiusResult r;
  if (quantity == "w") r = a_numerical_radius(ctx, t, rcfg);
  else if (quantity == "c") r = a_crawford(ctx, t, rcfg);
  else if (quantity == "norm") r = a_op_norm(ctx, t);
  else throw ConfigInvalidError("quantity must be one of w|c|norm");
  ordered_json j = radius_json(r);
  j["quantity"] = quantity;
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_euclid(const std::string& a_path, const std::string& b_path,
               const std::string& c_path, const RadiusConfig& rcfg) {
  const AContext ctx = make_context(read_matrix_file(a_path));
  const ComplexMatrix b = read_matrix_file(b_path);
  const ComplexMatrix c = read_matrix_file(c_path);
  ordered_json j;
  j["euclidean_radius"] = radius_json(a_euclidean_radius(ctx, b, c, rcfg));
  j["euclidean_seminorm"] = euclidean_seminorm_pair(ctx, b, c);
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_oracle(const std::string& a_path, const std::string& t_path,
               std::uint64_t seed, int samples, int restarts) {
  const AContext ctx = make_context(read_matrix_file(a_path));
  const ComplexMatrix t = read_matrix_file(t_path);
  OracleConfig cfg;
  cfg.seed = seed;
  cfg.n_samples = samples;
  cfg.n_restarts = restarts;
  const double est = direct_a_sphere(ctx, t, cfg);
  const RadiusResult w = a_numerical_radius(ctx, t);
  ordered_json j;
  j["oracle_estimate"] = est;
  j["optimizer_value"] = w.value;
  j["optimizer_gap"] = w.gap;
  j["agreement"] = std::abs(est - w.value) / std::max(1.0, w.value);
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_check(const std::string& id_name, const std::string& a_path,
              const std::string& b_path, const std::string& c_path,
              const std::string& alpha_str, std::uint64_t seed,
              const RadiusConfig& rcfg) {
  const CheckId id = check_id_from_string(id_name);
  const AContext ctx = make_context(read_matrix_file(a_path));
  std::optional<ComplexMatrix> b, c;
  if (!b_path.empty()) b = read_matrix_file(b_path);
  if (!c_path.empty()) c = read_matrix_file(c_path);
  CheckParams p;
  p.buzano_seed = seed;
  if (!alpha_str.empty()) p.alphas = {parse_complex(alpha_str)};
  EvalCache cache(ctx, rcfg);
  const BoundReport r = evaluate(id, ctx, b ? &*b : nullptr, c ? &*c : nullptr,
                                 p, &cache);
  std::cout << format_bound_report(r) << "\n";
  return r.pass ? kExitOk : kExitCheckFailure;
}

int cmd_campaign(const CampaignConfig& cfg, const std::string& out,
                 const std::string& csv_path) {
  CampaignReport rep;
  if (csv_path.empty()) {
    rep = run_campaign(cfg);
  } else {
    std::ofstream csv(csv_path);
    if (!csv) throw IoError("cannot write " + csv_path);
    rep = run_campaign(cfg, &csv);
  }
  emit(format_campaign_report(rep), out);
  return rep.all_pass() ? kExitOk : kExitCheckFailure;
}

int cmd_replay(const std::string& record_path, int index) {
  std::ifstream in(record_path);
  if (!in) throw IoError("cannot open " + record_path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  // accept either a bare failure record or a campaign report with --index
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw SchemaMismatchError(std::string("replay: ") + e.what());
  }
  if (doc.contains("schema") && doc["schema"] == kCampaignSchema) {
    if (!doc.contains("failures") || !doc["failures"].is_array() ||
        index >= static_cast<int>(doc["failures"].size()))
      throw SchemaMismatchError("replay: no failure record at that index");
    text = doc["failures"][index].dump();
  }
  const FailureRecord rec = parse_failure_record(text);
  const BoundReport r = replay(rec);
  ordered_json j = ordered_json::parse(format_bound_report(r));
  j["recorded_lhs"] = rec.lhs;
  j["recorded_rhs"] = rec.rhs;
  j["bit_identical"] = (r.lhs == rec.lhs && r.rhs == rec.rhs);
  std::cout << j.dump(2) << "\n";
  return r.pass ? kExitOk : kExitCheckFailure;
}

void add_radius_options(CLI::App* app, RadiusConfig& rcfg) {
  app->add_option("--n-theta", rcfg.n_theta, "coarse rotation grid size");
  app->add_option("--refine-rounds", rcfg.refine_rounds,
                  "shrink-grid rounds per candidate");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semi-Hilbertian operator radii and inequality campaigns"};
  app.require_subcommand(1);

  std::string a_path, b_path, c_path, t_path, out, out_a, csv_path, record_path;
  std::string kind = "generic", quantity = "w", id_name, alpha_str;
  std::string ranks = "both", checks_str = "all";
  std::string dims_str = "2,3,4";
  int dim = 2, rank = -1, trials = 10, samples = 100000, restarts = 64, index = 0;
  double rank_tol = -1.0, residual_tol = 1e-8, scale = 1.0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  RadiusConfig rcfg;

  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option_function<std::uint64_t>(
        "--seed",
        [&](std::uint64_t v) {
          seed = v;
          seed_given = true;
        },
        "rng seed (default: SEMIRAD_SEED or 0)");
  };

  auto* ctx_cmd = app.add_subcommand("context", "validate A and print diagnostics");
  ctx_cmd->add_option("--a", a_path, "PSD matrix file")->required();
  ctx_cmd->add_option("--rank-tol", rank_tol, "relative rank cutoff");
  ctx_cmd->add_option("--residual-tol", residual_tol, "membership residual tol");

  auto* gen_cmd = app.add_subcommand("gen", "generate a PSD matrix or operand");
  gen_cmd->add_option("--dim", dim, "dimension")->required();
  gen_cmd->add_option("--rank", rank, "rank of A (-1 = full)");
  gen_cmd->add_option("--kind", kind,
                      "psd|generic|selfadjoint|rankone|nilpotent|zero");
  gen_cmd->add_option("--a", a_path, "context matrix (operand kinds)");
  gen_cmd->add_option("--out", out, "output file")->required();
  gen_cmd->add_option("--out-a", out_a, "also write the generated A here");
  gen_cmd->add_option("--scale", scale, "operand scale");
  add_seed(gen_cmd);

  auto* rad_cmd = app.add_subcommand("radius", "A-weighted radius quantities");
  rad_cmd->add_option("--a", a_path, "PSD matrix file")->required();
  rad_cmd->add_option("--t", t_path, "operand file")->required();
  rad_cmd->add_option("--quantity", quantity, "w|c|norm");
  add_radius_options(rad_cmd, rcfg);

  auto* euc_cmd = app.add_subcommand("euclid", "pair radius and seminorm");
  euc_cmd->add_option("--a", a_path, "PSD matrix file")->required();
  euc_cmd->add_option("--b", b_path, "first operand")->required();
  euc_cmd->add_option("--c", c_path, "second operand")->required();
  add_radius_options(euc_cmd, rcfg);

  auto* orc_cmd = app.add_subcommand("oracle", "ambient A-sphere cross-check");
  orc_cmd->add_option("--a", a_path, "PSD matrix file")->required();
  orc_cmd->add_option("--t", t_path, "operand file")->required();
  orc_cmd->add_option("--samples", samples, "sample count");
  orc_cmd->add_option("--restarts", restarts, "ascent restarts");
  add_seed(orc_cmd);

  auto* chk_cmd = app.add_subcommand("check", "evaluate one registry check");
  chk_cmd->add_option("--id", id_name, "check id, see `list`")->required();
  chk_cmd->add_option("--a", a_path, "PSD matrix file")->required();
  chk_cmd->add_option("--b", b_path, "operand B");
  chk_cmd->add_option("--c", c_path, "operand C");
  chk_cmd->add_option("--alpha", alpha_str, "scalar parameter re[,im]");
  add_radius_options(chk_cmd, rcfg);
  add_seed(chk_cmd);

  auto* list_cmd = app.add_subcommand("list", "print the check catalog");

  auto* cam_cmd = app.add_subcommand("campaign", "run checks over ensembles");
  cam_cmd->add_option("--dims", dims_str, "comma-separated dimensions");
  cam_cmd->add_option("--ranks", ranks, "full|deficient|both");
  cam_cmd->add_option("--trials", trials, "trials per cell");
  cam_cmd->add_option("--checks", checks_str, "all or comma-separated ids");
  cam_cmd->add_option("--out", out, "write the report here (default stdout)");
  cam_cmd->add_option("--csv", csv_path, "per-trial slack csv");
  cam_cmd->add_option("--scale", scale, "operand scale");
  int buzano_samples = 10000;
  cam_cmd->add_option("--buzano-samples", buzano_samples,
                      "triples per Buzano sweep");
  add_radius_options(cam_cmd, rcfg);
  add_seed(cam_cmd);

  auto* rep_cmd = app.add_subcommand("replay", "recompute a logged failure");
  rep_cmd->add_option("--record", record_path, "failure record or report file")
      ->required();
  rep_cmd->add_option("--index", index, "failure index when replaying a report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!seed_given) seed = env_seed();
    if (ctx_cmd->parsed()) return cmd_context(a_path, rank_tol, residual_tol);
    if (gen_cmd->parsed())
      return cmd_gen(dim, rank, kind, seed, a_path, out, out_a, scale);
    if (rad_cmd->parsed()) return cmd_radius(a_path, t_path, quantity, rcfg);
    if (euc_cmd->parsed()) return cmd_euclid(a_path, b_path, c_path, rcfg);
    if (orc_cmd->parsed())
      return cmd_oracle(a_path, t_path, seed, samples, restarts);
    if (chk_cmd->parsed())
      return cmd_check(id_name, a_path, b_path, c_path, alpha_str, seed, rcfg);
    if (list_cmd->parsed()) {
      ordered_json arr = ordered_json::array();
      for (const auto& info : list_checks())
        arr.push_back(ordered_json{{"id", info.name},
                                   {"description", info.description},
                                   {"signature", info.signature},
                                   {"param_domain", info.param_domain}});
      std::cout << arr.dump(2) << "\n";
      return kExitOk;
    }
    if (cam_cmd->parsed()) {
      CampaignConfig cfg;
      std::istringstream ds(dims_str);
      for (std::string tok; std::getline(ds, tok, ',');)
        if (!tok.empty()) cfg.dims.push_back(std::stoi(tok));
      cfg.ranks = rank_policy_from_string(ranks);
      cfg.trials_per_cell = trials;
      if (checks_str != "all") {
        std::istringstream cs(checks_str);
        for (std::string tok; std::getline(cs, tok, ',');)
          if (!tok.empty()) cfg.checks.push_back(check_id_from_string(tok));
      }
      cfg.seed = seed;
      cfg.scale = scale;
      cfg.buzano_samples = buzano_samples;
      cfg.radius = rcfg;
      return cmd_campaign(cfg, out, csv_path);
    }
    if (rep_cmd->parsed()) return cmd_replay(record_path, index);
  } catch (const ConfigInvalidError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SchemaMismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
