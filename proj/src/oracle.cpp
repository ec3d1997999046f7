#include "semirad/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "semirad/rng.hpp"

namespace semirad {

namespace {

ComplexVector random_vector(SplitMix64& g, Eigen::Index n) {
  ComplexVector x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = g.complex_gaussian();
  return x;
}

// Projected gradient ascent with backtracking for f(x) = sum_k |<Mk x, x>|^2
// on the unit sphere.  `mats` and their adjoints are passed precomputed.
struct AscentProblem {
  std::vector<const ComplexMatrix*> mats;
  std::vector<ComplexMatrix> adjoints;

  double value(const ComplexVector& x) const {
    double f = 0.0;
    for (const auto* m : mats) f += std::norm((x.adjoint() * (*m * x))(0, 0));
    return f;
  }

  // Wirtinger gradient of f with respect to conj(x):
  //   sum_k conj(q_k) Mk x + q_k Mk* x,  q_k = <Mk x, x>
  ComplexVector gradient(const ComplexVector& x) const {
    ComplexVector g = ComplexVector::Zero(x.size());
    for (std::size_t k = 0; k < mats.size(); ++k) {
      const ComplexVector mx = *mats[k] * x;
      const Complex q = (x.adjoint() * mx)(0, 0);
      g += std::conj(q) * mx + q * (adjoints[k] * x);
    }
    return g;
  }
};

double ascend(const AscentProblem& prob, ComplexVector& x, int max_steps,
              double step_init) {
  x.normalize();
  double f = prob.value(x);
  double step = step_init;
  for (int it = 0; it < max_steps; ++it) {
    ComplexVector g = prob.gradient(x);
    g -= x * (x.adjoint() * g)(0, 0);  // tangential component
    const double gn = g.norm();
    if (gn < 1e-15 * (1.0 + std::abs(f))) break;
    g /= gn;
    bool moved = false;
    while (step > 1e-16) {
      ComplexVector xn = (x + step * g).normalized();
      const double fn = prob.value(xn);
      if (fn > f) {
        x = xn;
        f = fn;
        step = std::min(step * 1.5, 1.0);
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return f;
}

}  // namespace

void validate(const OracleConfig& cfg) {
  if (cfg.n_restarts <= 0 || cfg.n_samples <= 0 || cfg.ascent_steps <= 0)
    throw ConfigInvalidError("oracle: counts must be positive");
  if (!(cfg.step_init > 0.0) || cfg.step_init > 1.0)
    throw ConfigInvalidError("oracle: step_init must lie in (0, 1]");
}

RadiusResult direct_pair_ascent(const ComplexMatrix& m1, const ComplexMatrix& m2,
                                const OracleConfig& cfg) {
  validate(cfg);
  if (m1.rows() != m1.cols() || m2.rows() != m2.cols() || m1.rows() != m2.rows())
    throw DimensionMismatchError("direct_pair_ascent: operands differ in shape");
  if (!all_finite(m1) || !all_finite(m2))
    throw NonFiniteError("direct_pair_ascent: non-finite entries");

  AscentProblem prob;
  prob.mats = {&m1, &m2};
  prob.adjoints = {m1.adjoint(), m2.adjoint()};

  const Eigen::Index n = m1.rows();
  double best_f = -1.0;
  ComplexVector best_x;
  for (int r = 0; r < cfg.n_restarts; ++r) {
    SplitMix64 g(derive_stream(cfg.seed, {0x70, static_cast<std::uint64_t>(r)}));
    ComplexVector x = random_vector(g, n);
    const double f = ascend(prob, x, cfg.ascent_steps, cfg.step_init);
    if (f > best_f) {
      best_f = f;
      best_x = x;
    }
  }

  RadiusResult res;
  res.value = std::sqrt(std::max(0.0, best_f));
  res.witness = best_x;
  res.direction = ErrorDirection::LowerEstimate;
  res.gap = std::numeric_limits<double>::infinity();
  return res;
}

namespace {

// sample an A-unit vector with a kernel component of magnitude
// uniform[0,10] times the range part, per the seminorm-degeneracy stress
ComplexVector sample_a_unit(const AContext& ctx, SplitMix64& g) {
  const Eigen::Index n = ctx.dim();
  for (int attempt = 0; attempt < 64; ++attempt) {
    ComplexVector x0 = ctx.sqrt_a_pinv * random_vector(g, n);
    ComplexVector k = random_vector(g, n);
    k -= ctx.u * (ctx.u.adjoint() * k);
    const double kn = k.norm();
    if (kn > 0.0) k *= g.uniform(0.0, 10.0) * x0.norm() / kn;
    ComplexVector x = x0 + k;
    const double an = a_norm(ctx, x);
    if (an > 1e-12) return x / an;
  }
  throw DegenerateVectorError("oracle: could not sample an A-unit vector");
}

}  // namespace

double direct_a_sphere(const AContext& ctx, const ComplexMatrix& t,
                       const OracleConfig& cfg) {
  validate(cfg);
  if (t.rows() != ctx.dim() || t.cols() != ctx.dim())
    throw DimensionMismatchError("direct_a_sphere: operand shape mismatch");
  const ComplexMatrix at = ctx.a * t;

  double best = 0.0;
  ComplexVector best_x;
  SplitMix64 g(derive_stream(cfg.seed, {0x71}));
  for (int s = 0; s < cfg.n_samples; ++s) {
    const ComplexVector x = sample_a_unit(ctx, g);
    const double v = std::abs((x.adjoint() * (at * x))(0, 0));
    if (v > best || best_x.size() == 0) {
      best = v;
      best_x = x;
    }
  }

  // ascent polish on the A-sphere from the best sample plus fresh restarts;
  // the ascent direction is the Riemannian gradient for the A-metric
  // (A+ grad, projected A-orthogonally to x), not the raw Euclidean one
  auto polish = [&](ComplexVector x) {
    double f = std::abs((x.adjoint() * (at * x))(0, 0));
    const ComplexMatrix at_adj = at.adjoint();
    double step = cfg.step_init;
    for (int it = 0; it < cfg.ascent_steps; ++it) {
      const ComplexVector mx = at * x;
      const Complex q = (x.adjoint() * mx)(0, 0);
      const ComplexVector egrad = std::conj(q) * mx + q * (at_adj * x);
      ComplexVector grad = ctx.a_pinv * egrad;
      grad -= (x.adjoint() * (ctx.a * grad))(0, 0) * x;
      const double gn = grad.norm();
      if (gn < 1e-15 * (1.0 + f)) break;
      grad /= gn;
      bool moved = false;
      while (step > 1e-16) {
        ComplexVector xn = x + step * grad;
        const double an = a_norm(ctx, xn);
        if (an > 1e-12) {
          xn /= an;
          const double fn = std::abs((xn.adjoint() * (at * xn))(0, 0));
          if (fn > f) {
            x = xn;
            f = fn;
            step = std::min(step * 1.5, 1.0);
            moved = true;
            break;
          }
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    return f;
  };

  best = std::max(best, polish(best_x));
  const int extra = std::max(1, cfg.n_restarts / 8);
  for (int r = 0; r < extra; ++r)
    best = std::max(best, polish(sample_a_unit(ctx, g)));
  return best;
}

RadiusResult direct_a_pair(const AContext& ctx, const ComplexMatrix& b,
                           const ComplexMatrix& c, const OracleConfig& cfg) {
  validate(cfg);
  if (b.rows() != ctx.dim() || b.cols() != ctx.dim() || c.rows() != ctx.dim() ||
      c.cols() != ctx.dim())
    throw DimensionMismatchError("direct_a_pair: operand shape mismatch");
  const ComplexMatrix ab = ctx.a * b;
  const ComplexMatrix ac = ctx.a * c;
  const ComplexMatrix ab_adj = ab.adjoint();
  const ComplexMatrix ac_adj = ac.adjoint();

  auto value = [&](const ComplexVector& x) {
    return std::norm((x.adjoint() * (ab * x))(0, 0)) +
           std::norm((x.adjoint() * (ac * x))(0, 0));
  };

  auto ascend_a = [&](ComplexVector x) {
    double f = value(x);
    double step = cfg.step_init;
    for (int it = 0; it < cfg.ascent_steps; ++it) {
      const ComplexVector bx = ab * x, cx = ac * x;
      const Complex qb = (x.adjoint() * bx)(0, 0);
      const Complex qc = (x.adjoint() * cx)(0, 0);
      const ComplexVector egrad = std::conj(qb) * bx + qb * (ab_adj * x) +
                                  std::conj(qc) * cx + qc * (ac_adj * x);
      // Riemannian gradient for the A-sphere
      ComplexVector grad = ctx.a_pinv * egrad;
      grad -= (x.adjoint() * (ctx.a * grad))(0, 0) * x;
      const double gn = grad.norm();
      if (gn < 1e-15 * (1.0 + f)) break;
      grad /= gn;
      bool moved = false;
      while (step > 1e-16) {
        ComplexVector xn = x + step * grad;
        const double an = a_norm(ctx, xn);
        if (an > 1e-12) {
          xn /= an;
          const double fn = value(xn);
          if (fn > f) {
            x = xn;
            f = fn;
            step = std::min(step * 1.5, 1.0);
            moved = true;
            break;
          }
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    return std::make_pair(f, x);
  };

  SplitMix64 g(derive_stream(cfg.seed, {0x72}));
  double best_f = -1.0;
  ComplexVector best_x;
  const int samples = std::max(cfg.n_restarts * 4, 32);
  for (int s = 0; s < samples; ++s) {
    const ComplexVector x = sample_a_unit(ctx, g);
    const double f = value(x);
    if (f > best_f) {
      best_f = f;
      best_x = x;
    }
  }
  auto [fb, xb] = ascend_a(best_x);
  best_f = fb;
  best_x = xb;
  for (int r = 0; r < cfg.n_restarts; ++r) {
    auto [f, x] = ascend_a(sample_a_unit(ctx, g));
    if (f > best_f) {
      best_f = f;
      best_x = x;
    }
  }

  RadiusResult res;
  res.value = std::sqrt(std::max(0.0, best_f));
  res.witness = best_x;
  res.direction = ErrorDirection::LowerEstimate;
  res.gap = std::numeric_limits<double>::infinity();
  return res;
}

std::vector<BuzanoSweep> buzano_sample_batch(const AContext& ctx,
                                             const OracleConfig& cfg,
                                             const std::vector<Complex>& alphas) {
  validate(cfg);
  for (Complex alpha : alphas)
    if (std::abs(alpha) == 0.0)
      throw BadParameterError("buzano_sample: alpha must be non-zero");
  SplitMix64 g(derive_stream(cfg.seed, {0x73}));
  const Eigen::Index n = ctx.dim();

  std::vector<BuzanoSweep> sweeps(alphas.size());
  for (auto& s : sweeps) s.min_slack = std::numeric_limits<double>::infinity();

  for (int s = 0; s < cfg.n_samples; ++s) {
    const ComplexVector e = sample_a_unit(ctx, g);
    ComplexVector x = random_vector(g, n);
    ComplexVector y = random_vector(g, n);
    // extra kernel mass so the seminorm degeneracy is exercised
    ComplexVector kx = random_vector(g, n), ky = random_vector(g, n);
    kx -= ctx.u * (ctx.u.adjoint() * kx);
    ky -= ctx.u * (ctx.u.adjoint() * ky);
    x += g.uniform(0.0, 10.0) * kx;
    y += g.uniform(0.0, 10.0) * ky;

    const double lhs = std::abs(a_inner(ctx, x, e) * a_inner(ctx, e, y));
    const double cross = std::abs(a_inner(ctx, x, y));
    const double norms = a_norm(ctx, x) * a_norm(ctx, y);
    for (std::size_t k = 0; k < alphas.size(); ++k) {
      const double mx = std::max(1.0, std::abs(alphas[k] - Complex(1, 0)));
      const double rhs = (cross + mx * norms) / std::abs(alphas[k]);
      const double slack = rhs - lhs;
      if (slack < sweeps[k].min_slack) {
        sweeps[k].min_slack = slack;
        sweeps[k].worst_lhs = lhs;
        sweeps[k].worst_rhs = rhs;
      }
    }
  }
  return sweeps;
}

BuzanoSweep buzano_sample(const AContext& ctx, const OracleConfig& cfg, Complex alpha) {
  return buzano_sample_batch(ctx, cfg, {alpha}).front();
}

}  // namespace semirad
