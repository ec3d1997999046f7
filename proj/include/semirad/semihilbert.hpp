#pragma once

#include <utility>

#include "semirad/types.hpp"

namespace semirad {

// The semi-Hilbertian layer.  A validated positive-semidefinite A induces
// the semi-inner product <x,y>_A = <Ax,y> and everything downstream: the
// A-adjoint T# (the Douglas solution of A X = T* A with range inside the
// range of A), the A-Cartesian decomposition, and the compression of an
// A-bounded operator to an honest operator on the range of A.  In finite
// dimension the range of A^{1/2} equals the range of A, so that compression
// is just M = U* A^{1/2} T (A^{1/2})+ U for an orthonormal range basis U;
// it carries w_A, c_A and the A-operator seminorm to their classical
// counterparts on the reduced space.

struct AContext {
  ComplexMatrix a;            // the positive operator, symmetrized
  ComplexMatrix sqrt_a;       // A^{1/2}
  ComplexMatrix sqrt_a_pinv;  // (A^{1/2})+
  ComplexMatrix a_pinv;       // A+ = (A^{1/2})+ (A^{1/2})+
  ComplexMatrix u;            // n x r orthonormal basis of the range of A
  Eigen::Index rank = 0;
  double rank_tol = 0.0;      // relative eigenvalue cutoff used for rank
  double residual_tol = 0.0;  // relative tolerance for membership tests

  Eigen::Index dim() const { return a.rows(); }
  ComplexMatrix range_projector() const { return u * u.adjoint(); }
};

AContext make_context(const ComplexMatrix& a, double rank_tol = -1.0,
                      double residual_tol = 1e-8);

Complex a_inner(const AContext& ctx, const ComplexVector& x, const ComplexVector& y);
double a_norm(const AContext& ctx, const ComplexVector& x);

// Douglas criterion: T admits an A-adjoint iff the range of T*A lies in the
// range of A; tested as a relative projector residual.
bool admits_a_adjoint(const AContext& ctx, const ComplexMatrix& t);

// Membership in the A-bounded algebra (operators with ||Tx||_A <= c||x||_A),
// i.e. T maps the kernel of A into itself up to residual_tol.  Strictly
// larger than the A-adjoint class.
bool is_a_bounded(const AContext& ctx, const ComplexMatrix& t);

// A-selfadjointness residual test: A T = T* A.
bool is_a_selfadjoint(const AContext& ctx, const ComplexMatrix& t);

// T# = A+ T* A; throws NoAAdjoint when the Douglas test fails.
ComplexMatrix a_adjoint(const AContext& ctx, const ComplexMatrix& t);

// T = Re_A(T) + i Im_A(T) with Re_A(T) = (T + T#)/2, both parts A-selfadjoint.
std::pair<ComplexMatrix, ComplexMatrix> cartesian(const AContext& ctx,
                                                  const ComplexMatrix& t);

// The A-rank-one operator z -> <z,x>_A x, i.e. the matrix x (Ax)*.
// An A-projection (T^2 = T) exactly when x is A-unit.
ComplexMatrix rank_one_a(const AContext& ctx, const ComplexVector& x);

// Compression to the range of A: M = U* A^{1/2} T (A^{1/2})+ U, an r x r
// matrix with w_A(T) = w(M), c_A(T) = c(M), ||T||_A = ||M||.
// Requires T to be A-bounded (throws NotABounded otherwise); pass
// check_bounded = false to compress the range-restricted part of an
// arbitrary operator.
ComplexMatrix reduce(const AContext& ctx, const ComplexMatrix& t,
                     bool check_bounded = true);

// An operator bundled with its eagerly computed A-artifacts; immutable after
// construction so values are freely shareable across threads.
struct AOperator {
  ComplexMatrix t;
  std::optional<ComplexMatrix> sharp;    // present iff T admits an A-adjoint
  std::optional<ComplexMatrix> reduced;  // present iff T is A-bounded
};

AOperator make_a_operator(const AContext& ctx, ComplexMatrix t);

}  // namespace semirad
