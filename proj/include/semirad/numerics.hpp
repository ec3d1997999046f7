#pragma once

#include "semirad/types.hpp"

namespace semirad {

// Dense complex linear-algebra primitives.  All functions are pure and
// deterministic given the input bytes; declared-Hermitian inputs are
// symmetrized as (M + M*)/2 before factorization so round-off asymmetry
// cannot leak into downstream results.

struct HermitianEig {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // orthonormal columns
};

// Relative rank cutoff: singular values (or eigenvalues) below
// rank_tol * sigma_max count as zero.  Pass a negative rank_tol to request
// the default n * machine-epsilon.
double default_rank_tol(Eigen::Index n);
double resolve_rank_tol(double rank_tol, Eigen::Index n);

HermitianEig hermitian_eig(const ComplexMatrix& m);

ComplexMatrix pinv(const ComplexMatrix& m, double rank_tol = -1.0);

ComplexMatrix psd_sqrt(const ComplexMatrix& a);

struct RangeBasis {
  ComplexMatrix u;  // n x r, orthonormal columns spanning the range
  Eigen::Index rank = 0;
};

RangeBasis range_basis(const ComplexMatrix& a, double rank_tol = -1.0);

}  // namespace semirad
