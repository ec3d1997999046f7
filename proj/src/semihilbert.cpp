#include "semirad/semihilbert.hpp"

#include "semirad/numerics.hpp"

namespace semirad {

namespace {

void require_square_n(const AContext& ctx, const ComplexMatrix& t, const char* who) {
  if (t.rows() != ctx.dim() || t.cols() != ctx.dim())
    throw DimensionMismatchError(std::string(who) + ": operand shape does not match context");
  if (!all_finite(t)) throw NonFiniteError(std::string(who) + ": non-finite operand");
}

}  // namespace

AContext make_context(const ComplexMatrix& a, double rank_tol, double residual_tol) {
  if (a.rows() != a.cols()) throw NotPsdError("make_context: A must be square");
  if (!all_finite(a)) throw NonFiniteError("make_context: A has non-finite entries");
  HermitianEig eig = hermitian_eig(a);
  const double lmax = eig.eigenvalues.maxCoeff();
  const double lmin = eig.eigenvalues.minCoeff();
  if (lmin < -1e-10 * std::max(lmax, 0.0))
    throw NotPsdError("make_context: A is not positive semidefinite");
  if (lmax <= 0.0) throw ZeroOperatorError("make_context: A must be non-zero");

  AContext ctx;
  ctx.rank_tol = resolve_rank_tol(rank_tol, a.rows());
  ctx.residual_tol = residual_tol;
  ctx.a = hermitian_part(a);

  const double cutoff = ctx.rank_tol * lmax;
  const Eigen::Index n = a.rows();
  RealVector lam = eig.eigenvalues.cwiseMax(0.0);
  RealVector root = RealVector::Zero(n), root_inv = RealVector::Zero(n),
             inv = RealVector::Zero(n);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    // eigenvalues at or below the rank cutoff count as exact zeros, in the
    // square root too, so kernel directions stay clean in every artifact
    if (eig.eigenvalues(i) > cutoff) {
      ++r;
      root(i) = std::sqrt(lam(i));
      root_inv(i) = 1.0 / root(i);
      inv(i) = 1.0 / lam(i);
    }
  }
  const ComplexMatrix& v = eig.eigenvectors;
  ctx.sqrt_a = hermitian_part(v * root.asDiagonal() * v.adjoint());
  ctx.sqrt_a_pinv = hermitian_part(v * root_inv.asDiagonal() * v.adjoint());
  ctx.a_pinv = hermitian_part(v * inv.asDiagonal() * v.adjoint());
  ctx.u = v.rightCols(r);
  ctx.rank = r;
  return ctx;
}

Complex a_inner(const AContext& ctx, const ComplexVector& x, const ComplexVector& y) {
  if (x.size() != ctx.dim() || y.size() != ctx.dim())
    throw DimensionMismatchError("a_inner: vector length does not match context");
  return (y.adjoint() * (ctx.a * x))(0, 0);
}

double a_norm(const AContext& ctx, const ComplexVector& x) {
  const Complex q = a_inner(ctx, x, x);
  return std::sqrt(std::max(0.0, q.real()));
}

bool admits_a_adjoint(const AContext& ctx, const ComplexMatrix& t) {
  require_square_n(ctx, t, "admits_a_adjoint");
  const ComplexMatrix ta = t.adjoint() * ctx.a;
  const ComplexMatrix residual = ta - ctx.u * (ctx.u.adjoint() * ta);
  return residual.norm() <= ctx.residual_tol * (1.0 + ta.norm());
}

bool is_a_bounded(const AContext& ctx, const ComplexMatrix& t) {
  require_square_n(ctx, t, "is_a_bounded");
  // T must map the kernel of A into itself: A^{1/2} T (I - UU*) = 0.
  const ComplexMatrix st = ctx.sqrt_a * t;
  const ComplexMatrix residual = st - (st * ctx.u) * ctx.u.adjoint();
  return residual.norm() <= ctx.residual_tol * (1.0 + st.norm());
}

bool is_a_selfadjoint(const AContext& ctx, const ComplexMatrix& t) {
  require_square_n(ctx, t, "is_a_selfadjoint");
  const ComplexMatrix lhs = ctx.a * t;
  return (lhs - lhs.adjoint()).norm() <=
         ctx.residual_tol * (1.0 + ctx.a.norm() * t.norm());
}

ComplexMatrix a_adjoint(const AContext& ctx, const ComplexMatrix& t) {
  if (!admits_a_adjoint(ctx, t))
    throw NoAAdjointError("a_adjoint: range(T*A) is not contained in range(A)");
  return ctx.a_pinv * t.adjoint() * ctx.a;
}

std::pair<ComplexMatrix, ComplexMatrix> cartesian(const AContext& ctx,
                                                  const ComplexMatrix& t) {
  const ComplexMatrix sharp = a_adjoint(ctx, t);
  ComplexMatrix re = 0.5 * (t + sharp);
  ComplexMatrix im = Complex(0, -0.5) * (t - sharp);
  return {std::move(re), std::move(im)};
}

ComplexMatrix rank_one_a(const AContext& ctx, const ComplexVector& x) {
  if (x.size() != ctx.dim())
    throw DimensionMismatchError("rank_one_a: vector length does not match context");
  const double nx = a_norm(ctx, x);
  if (nx <= ctx.rank_tol)
    throw DegenerateVectorError("rank_one_a: vector has vanishing A-norm");
  return x * (ctx.a * x).adjoint();
}

ComplexMatrix reduce(const AContext& ctx, const ComplexMatrix& t, bool check_bounded) {
  require_square_n(ctx, t, "reduce");
  if (check_bounded && !is_a_bounded(ctx, t) && !admits_a_adjoint(ctx, t))
    throw NotABoundedError("reduce: operator is not A-bounded");
  return ctx.u.adjoint() * (ctx.sqrt_a * t * ctx.sqrt_a_pinv) * ctx.u;
}

AOperator make_a_operator(const AContext& ctx, ComplexMatrix t) {
  AOperator op;
  if (admits_a_adjoint(ctx, t)) op.sharp = a_adjoint(ctx, t);
  if (is_a_bounded(ctx, t) || op.sharp.has_value())
    op.reduced = reduce(ctx, t, false);
  op.t = std::move(t);
  return op;
}

}  // namespace semirad
