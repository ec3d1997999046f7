// Acceptance suite: one pass/fail line per criterion, non-zero exit when any
// criterion fails.  Everything runs from fixed seeds so reruns are identical.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <semirad/campaign.hpp>
#include <semirad/ensembles.hpp>
#include <semirad/inequalities.hpp>
#include <semirad/oracle.hpp>
#include <semirad/radii.hpp>
#include <semirad/rng.hpp>

using namespace semirad;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail) {
  std::printf("%s  criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", idx, name,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

ComplexMatrix ginibre(std::uint64_t seed, int n) {
  SplitMix64 g(seed);
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = g.complex_gaussian();
  return m;
}

// ---------------------------------------------------------------------------
// 1. Full soundness sweep + 8. refinement claims carried by the same report
// ---------------------------------------------------------------------------

void criterion_1_and_8() {
  CampaignConfig cfg;
  cfg.dims = {2, 3, 4, 6};
  cfg.ranks = RankPolicy::Both;
  cfg.trials_per_cell = 250;
  cfg.seed = 20240901;
  const CampaignReport rep = run_campaign(cfg);

  long total = 0, passed = 0;
  double worst = 0.0;
  for (const auto& [id, ag] : rep.per_check) {
    total += ag.count;
    passed += ag.pass_count;
    worst = std::min(worst, ag.min_slack);
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%ld/%ld evaluations passed over %zu checks, min slack %.3e, "
                "%.1f s",
                passed, total, rep.per_check.size(), worst, rep.wall_time_s);
  const bool ok = rep.all_pass() && rep.per_check.size() == 21 &&
                  total == 2 * 4 * 250 * 21 && rep.wall_time_s < 300.0;
  report(1, "inequality soundness sweep, dims {2,3,4,6}, 250 trials/cell", ok,
         buf);

  const double lo = rep.extra_stats.at("remark_refine_lower_min_norm_slack");
  const double up = rep.extra_stats.at("remark_refine_upper_min_norm_slack");
  const double ante = rep.extra_stats.at("remark_ii_antecedent_count");
  const double viol = rep.extra_stats.at("remark_ii_max_violation");
  std::snprintf(buf, sizeof buf,
                "lower refinement min slack %.3e, upper %.3e, implication "
                "antecedents %.0f, max violation %.3e",
                lo, up, ante, viol);
  report(8, "refinement claims hold on every sweep instance",
         lo >= -1e-7 && up >= -1e-7 && viol <= 1e-9, buf);
}

// ---------------------------------------------------------------------------
// 2. Reduction identity for the pair radius against the ambient A-sphere
// ---------------------------------------------------------------------------

void criterion_2() {
  int bad_bound = 0, bad_agree = 0;
  double worst_rel = 0.0;
  for (int k = 0; k < 200; ++k) {
    const int dim = 2 + k % 3;  // 2, 3, 4
    const int rank = (k % 2 == 0) ? dim : std::max(1, (dim + 1) / 2);
    const std::uint64_t base = derive_stream(9100, {static_cast<std::uint64_t>(k)});
    const AContext ctx = make_context(random_psd(dim, rank, base));
    const ComplexMatrix b =
        random_compatible(ctx, OperandKind::Generic, derive_stream(base, {1}));
    const ComplexMatrix c =
        random_compatible(ctx, OperandKind::Generic, derive_stream(base, {2}));
    const RadiusResult we = a_euclidean_radius(ctx, b, c);
    OracleConfig ocfg;
    ocfg.n_restarts = 48;
    ocfg.ascent_steps = 400;
    ocfg.seed = base;
    const RadiusResult est = direct_a_pair(ctx, b, c, ocfg);
    const double scale = std::max(1.0, we.value);
    if (est.value > we.value + we.gap + 1e-9 * scale) ++bad_bound;
    const double rel = std::abs(est.value - we.value) / scale;
    worst_rel = std::max(worst_rel, rel);
    if (rel > 1e-3) ++bad_agree;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "200 instances, bound violations %d, agreement misses %d, "
                "worst relative gap %.2e",
                bad_bound, bad_agree, worst_rel);
  report(2, "pair reduction identity vs ambient A-sphere estimate",
         bad_bound == 0 && bad_agree == 0, buf);
}

// ---------------------------------------------------------------------------
// 3. Optimizer cross-validation on plain pairs + the Jordan block value
// ---------------------------------------------------------------------------

void criterion_3() {
  int misses = 0;
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const int n = 2 + k % 4;  // 2..5
    const ComplexMatrix m1 = ginibre(derive_stream(9200, {2 * (unsigned)k}), n);
    const ComplexMatrix m2 = ginibre(derive_stream(9200, {2 * (unsigned)k + 1}), n);
    const RadiusResult we = euclidean_radius(m1, m2);
    OracleConfig ocfg;
    ocfg.seed = 555 + k;
    const RadiusResult est = direct_pair_ascent(m1, m2, ocfg);
    const double rel = std::abs(we.value - est.value) / std::max(1.0, we.value);
    worst = std::max(worst, rel);
    if (rel > 1e-6) ++misses;
  }
  ComplexMatrix j = ComplexMatrix::Zero(2, 2);
  j(0, 1) = 1.0;
  const double wj = numerical_radius(j).value;
  const bool jordan_ok = std::abs(wj - 0.5) <= 1e-8;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "200 pairs, misses %d, worst relative deviation %.2e, Jordan "
                "w = %.12f",
                misses, worst, wj);
  report(3, "euclidean_radius vs direct_pair_ascent within 1e-6",
         misses == 0 && jordan_ok, buf);
}

// ---------------------------------------------------------------------------
// 4. The pair-radius equality under the sum/difference rotation
// ---------------------------------------------------------------------------

void criterion_4() {
  int misses = 0;
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    const int dim = 2 + k % 4;
    const int rank = (k % 3 == 0) ? std::max(1, dim - 1) : dim;
    const std::uint64_t base = derive_stream(9400, {static_cast<std::uint64_t>(k)});
    const AContext ctx = make_context(random_psd(dim, rank, base));
    const ComplexMatrix b =
        random_compatible(ctx, OperandKind::Generic, derive_stream(base, {1}));
    const ComplexMatrix c =
        random_compatible(ctx, OperandKind::Generic, derive_stream(base, {2}));
    EvalCache cache(ctx);
    const BoundReport r = evaluate(CheckId::EQ5, ctx, &b, &c, {}, &cache);
    const double rel = r.slack / r.scale;
    worst = std::max(worst, rel);
    if (r.slack > 1e-6 * r.scale) ++misses;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "500 instances, misses %d, worst |lhs-rhs|/scale %.2e",
                misses, worst);
  report(4, "pair-radius equality w_Ae^2(B+C,B-C) = 2 w_Ae^2(B,C)", misses == 0,
         buf);
}

// ---------------------------------------------------------------------------
// 5. Rank-one proposition across the alpha grid
// ---------------------------------------------------------------------------

void criterion_5() {
  int misses = 0;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int dim = 2 + k % 4;
    const int rank = std::max(2, dim - k % 2);  // rank >= 2 throughout
    const std::uint64_t base = derive_stream(9500, {static_cast<std::uint64_t>(k)});
    const AContext ctx = make_context(random_psd(dim, rank, base));
    const ComplexVector x = random_a_unit(ctx, derive_stream(base, {1}));
    const ComplexMatrix t = rank_one_a(ctx, x);
    const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);

    std::vector<Complex> alphas = default_alpha_grid();
    SplitMix64 g(derive_stream(base, {2}));
    for (int i = 0; i < 8; ++i) {
      Complex v(g.uniform(-3.0, 3.0), g.uniform(-3.0, 3.0));
      while (std::abs(v) < 0.1)
        v = Complex(g.uniform(-3.0, 3.0), g.uniform(-3.0, 3.0));
      alphas.push_back(v);
    }
    for (Complex alpha : alphas) {
      const double dist = std::abs(alpha - Complex(1, 0));
      const double expected = std::max(1.0, dist);
      const double value = a_op_norm(ctx, alpha * t - id).value;
      const double err = std::abs(value - expected);
      worst = std::max(worst, err);
      if (err > 1e-7) ++misses;
      if (dist >= 1.0 && std::abs(value - dist) > 1e-7) ++misses;
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "100 contexts x 14 alphas, misses %d, worst error %.2e",
                misses, worst);
  report(5, "rank-one projection norm ||alpha T - I||_A = max{1, |alpha-1|}",
         misses == 0, buf);
}

// ---------------------------------------------------------------------------
// 6. Buzano sweep: 20 (context, alpha) cells, 1e4 triples each
// ---------------------------------------------------------------------------

void criterion_6() {
  double min_slack = std::numeric_limits<double>::infinity();
  const std::vector<Complex> alphas = {Complex(2, 0), Complex(0.5, 0),
                                       Complex(1, 1), Complex(-2.5, 0.5)};
  for (int c = 0; c < 5; ++c) {
    const int dim = 2 + c;
    const int rank = c % 2 ? dim : std::max(1, dim - 1);
    const AContext ctx =
        make_context(random_psd(dim, rank, derive_stream(9600, {(unsigned)c})));
    OracleConfig ocfg;
    ocfg.n_samples = 10000;
    ocfg.seed = derive_stream(9601, {(unsigned)c});
    const auto sweeps = buzano_sample_batch(ctx, ocfg, alphas);
    for (const auto& s : sweeps) min_slack = std::min(min_slack, s.min_slack);
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "20 cells x 1e4 triples, min slack %.3e", min_slack);
  report(6, "generalized Buzano sweep stays non-negative", min_slack >= -1e-10,
         buf);
}

// ---------------------------------------------------------------------------
// 7. Structural invariants at module tolerances
// ---------------------------------------------------------------------------

void criterion_7() {
  int bad_sharp = 0, bad_reduce = 0, bad_sandwich = 0, bad_power = 0,
      bad_selfadj = 0;
  for (int k = 0; k < 500; ++k) {
    const int dim = 2 + k % 4;
    const int rank = (k % 3 == 0) ? std::max(1, (dim + 1) / 2) : dim;
    const std::uint64_t base = derive_stream(9700, {static_cast<std::uint64_t>(k)});
    const AContext ctx = make_context(random_psd(dim, rank, base));
    const ComplexMatrix t =
        random_compatible(ctx, OperandKind::Generic, derive_stream(base, {1}));
    const ComplexMatrix s =
        random_compatible(ctx, OperandKind::Generic, derive_stream(base, {2}));

    // double and triple sharp
    const ComplexMatrix sharp = a_adjoint(ctx, t);
    const ComplexMatrix dd = a_adjoint(ctx, sharp);
    const ComplexMatrix p = ctx.range_projector();
    if ((dd - p * t * p).norm() > 1e-8 * (1.0 + t.norm())) ++bad_sharp;
    if ((a_adjoint(ctx, dd) - sharp).norm() > 1e-8 * (1.0 + sharp.norm()))
      ++bad_sharp;

    // product and linearity of the compression
    const ComplexMatrix mt = reduce(ctx, t);
    const ComplexMatrix ms = reduce(ctx, s);
    const double sc = 1.0 + mt.norm() + ms.norm();
    if ((reduce(ctx, ComplexMatrix(s * t)) - ms * mt).norm() > 1e-8 * sc * sc)
      ++bad_reduce;
    if ((reduce(ctx, ComplexMatrix(s + 2.0 * t)) - (ms + 2.0 * mt)).norm() >
        1e-8 * sc)
      ++bad_reduce;

    // sandwich at 1e-9 relative on the reduced quantities
    const double w = numerical_radius(mt).value;
    const double nm = op_norm(mt).value;
    const double cr = crawford(mt).value;
    const double tol = 1e-9 * std::max(1.0, nm);
    if (!(cr <= w + tol && w <= nm + tol && nm <= 2.0 * w + tol)) ++bad_sandwich;

    // power inequality, n = 2 and 3
    if (numerical_radius(ComplexMatrix(mt * mt)).value > w * w + 1e-8)
      ++bad_power;
    if (numerical_radius(ComplexMatrix(mt * mt * mt)).value > w * w * w + 1e-8)
      ++bad_power;

    // A-selfadjoint equality w_A = ||.||_A
    const ComplexMatrix re = 0.5 * (t + sharp);
    const double wre = a_numerical_radius(ctx, re).value;
    const double nre = a_op_norm(ctx, re).value;
    if (std::abs(wre - nre) > 1e-7 * (1.0 + nre)) ++bad_selfadj;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "500 instances: sharp %d, reduce %d, sandwich %d, power %d, "
                "selfadjoint %d violations",
                bad_sharp, bad_reduce, bad_sandwich, bad_power, bad_selfadj);
  report(7, "structural invariants at module tolerances",
         bad_sharp + bad_reduce + bad_sandwich + bad_power + bad_selfadj == 0,
         buf);
}

}  // namespace

int main() {
  criterion_1_and_8();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
