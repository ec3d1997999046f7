#pragma once

#include "semirad/semihilbert.hpp"
#include "semirad/types.hpp"

namespace semirad {

// Optimization engines for the sup/inf operator quantities.
//
// The rotation identity behind all of them: the numerical radius of M is
// max_theta lambda_max(Re(e^{i theta} M)), and the Crawford number (when the
// numerical range misses the origin) is max_theta lambda_min(Re(e^{i theta} M)),
// both by convexity of the numerical range.  Each 1-D search runs a coarse
// grid, then shrinks every candidate interval that could still contain the
// global maximum.  Values are always evaluations at feasible points, so
// LowerEstimate results never exceed the true supremum; `gap` bounds the
// distance to the supremum for the refined candidates (the coarse-grid
// support bound keeps the true maximizer inside one of them).
//
// Pair quantities use the duality sqrt(a^2+b^2) = max |l1 a + l2 b| over unit
// (l1,l2) plus phase invariance:
//   w_e(M1,M2) = max over (t, phi) of w(cos t M1 + e^{i phi} sin t M2).
// They are computed by monotone alternating ascent (optimal angles are
// closed-form for fixed x; the optimal x for fixed angles is a top
// eigenvector) from structured seeds plus a coarse joint grid, finished with
// a certified theta search in the best (t, phi) slice.  Cross-validated
// against the independent gradient-ascent oracle.

struct RadiusConfig {
  int n_theta = 512;         // coarse rotation grid size
  int refine_rounds = 14;    // shrink-grid rounds per candidate interval
  int max_candidates = 8;    // refined candidate intervals per search
  int pair_grid_t = 6;       // joint seed grid for pair quantities
  int pair_grid_phi = 12;
  int pair_grid_theta = 12;
  int pair_max_iter = 80;    // alternating ascent iterations per seed
  int pair_random_seeds = 4;
  double pair_tol = 1e-14;   // relative improvement stopping threshold
};

RadiusResult numerical_radius(const ComplexMatrix& m, const RadiusConfig& cfg = {});
RadiusResult crawford(const ComplexMatrix& m, const RadiusConfig& cfg = {});
RadiusResult op_norm(const ComplexMatrix& m);
RadiusResult euclidean_radius(const ComplexMatrix& m1, const ComplexMatrix& m2,
                              const RadiusConfig& cfg = {});

// sqrt(lambda_max(Mb* Mb + Mc* Mc)) of the reduced matrices; equals the
// supremum of sqrt(||Bx||_A^2 + ||Cx||_A^2) over A-unit x.  Closed form.
double euclidean_seminorm_pair(const AContext& ctx, const ComplexMatrix& b,
                               const ComplexMatrix& c);

// A-weighted wrappers through the range compression.
RadiusResult a_numerical_radius(const AContext& ctx, const ComplexMatrix& t,
                                const RadiusConfig& cfg = {});
RadiusResult a_crawford(const AContext& ctx, const ComplexMatrix& t,
                        const RadiusConfig& cfg = {});
RadiusResult a_op_norm(const AContext& ctx, const ComplexMatrix& t);
RadiusResult a_euclidean_radius(const AContext& ctx, const ComplexMatrix& b,
                                const ComplexMatrix& c, const RadiusConfig& cfg = {});

}  // namespace semirad
