#pragma once

#include <vector>

#include "semirad/semihilbert.hpp"
#include "semirad/types.hpp"

namespace semirad {

// Independent brute-force estimators used to validate the optimizers and the
// range-compression identity.  Everything here works directly on the sphere
// (Euclidean or A-weighted, in ambient coordinates) and never touches the
// grid/rotation machinery it cross-checks.  All estimates are evaluations at
// feasible points, hence certified lower bounds of the suprema; no gap is
// claimed (RadiusResult.gap is set to infinity).

struct OracleConfig {
  int n_restarts = 64;
  int n_samples = 100000;
  int ascent_steps = 500;
  double step_init = 0.1;
  std::uint64_t seed = 0;
};

void validate(const OracleConfig& cfg);

// Maximize |<M1 x,x>|^2 + |<M2 x,x>|^2 over the unit sphere by projected
// gradient ascent with backtracking from n_restarts random starts.  Restart
// RNG streams are derived from (seed, restart index), so parallel and serial
// schedules agree.
RadiusResult direct_pair_ascent(const ComplexMatrix& m1, const ComplexMatrix& m2,
                                const OracleConfig& cfg);

// Literal w_A sampling in the ambient space: x = (A^{1/2})+ u plus kernel
// noise, renormalized to ||x||_A = 1, objective |<ATx, x>|.  The best
// samples get a short ascent polish on the A-sphere; pure sampling cannot
// reach the documented agreement tolerance once the range dimension exceeds
// two or three.
double direct_a_sphere(const AContext& ctx, const ComplexMatrix& t,
                       const OracleConfig& cfg);

// Pair analogue of direct_a_sphere, used to validate the reduction identity
// for the joint radius: maximizes sqrt(|<Bx,x>_A|^2 + |<Cx,x>_A|^2) over the
// ambient A-sphere by sampling plus ascent.
RadiusResult direct_a_pair(const AContext& ctx, const ComplexMatrix& b,
                           const ComplexMatrix& c, const OracleConfig& cfg);

// Worst-case slack of the generalized Buzano inequality
//   |<x,e>_A <e,y>_A| <= (|<x,y>_A| + max{1, |alpha-1|} ||x||_A ||y||_A)/|alpha|
// over cfg.n_samples sampled triples (x, e, y) with e A-unit.  Non-negative
// up to round-off for every non-zero alpha.
struct BuzanoSweep {
  double min_slack = 0.0;
  double worst_lhs = 0.0;
  double worst_rhs = 0.0;
};

BuzanoSweep buzano_sample(const AContext& ctx, const OracleConfig& cfg, Complex alpha);

// Batch variant sharing one set of sampled triples across the whole alpha
// grid; element i matches buzano_sample(ctx, cfg, alphas[i]) exactly since
// the triples depend only on cfg.seed.
std::vector<BuzanoSweep> buzano_sample_batch(const AContext& ctx,
                                             const OracleConfig& cfg,
                                             const std::vector<Complex>& alphas);

}  // namespace semirad
