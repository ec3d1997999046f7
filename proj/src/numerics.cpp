#include "semirad/numerics.hpp"

#include <Eigen/SVD>
#include <limits>

namespace semirad {

std::uint64_t matrix_digest(const ComplexMatrix& m) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto mix = [&h](const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 0x100000001B3ULL;
    }
  };
  const std::int64_t r = m.rows(), c = m.cols();
  mix(&r, sizeof r);
  mix(&c, sizeof c);
  mix(m.data(), sizeof(Complex) * static_cast<std::size_t>(m.size()));
  return h;
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

double frobenius(const ComplexMatrix& m) { return m.norm(); }

double default_rank_tol(Eigen::Index n) {
  return static_cast<double>(n) * std::numeric_limits<double>::epsilon();
}

double resolve_rank_tol(double rank_tol, Eigen::Index n) {
  if (rank_tol < 0.0) return default_rank_tol(n);
  return rank_tol;
}

namespace {

void require_finite(const ComplexMatrix& m, const char* who) {
  if (!all_finite(m))
    throw NonFiniteError(std::string(who) + ": input has NaN/Inf entries");
}

}  // namespace

HermitianEig hermitian_eig(const ComplexMatrix& m) {
  require_finite(m, "hermitian_eig");
  if (m.rows() != m.cols())
    throw NotHermitianError("hermitian_eig: matrix is not square");
  const double asym = (m - m.adjoint()).norm();
  if (asym > 1e-10 * (1.0 + m.norm()))
    throw NotHermitianError("hermitian_eig: ||M - M*|| too large");
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  if (es.info() != Eigen::Success)
    throw Error("hermitian_eig: eigensolver failed to converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

ComplexMatrix pinv(const ComplexMatrix& m, double rank_tol) {
  require_finite(m, "pinv");
  if (m.size() == 0) return ComplexMatrix(m.cols(), m.rows());
  const double tol = resolve_rank_tol(rank_tol, std::max(m.rows(), m.cols()));
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = tol * (sv.size() > 0 ? sv(0) : 0.0);
  RealVector inv = RealVector::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff && sv(i) > 0.0) inv(i) = 1.0 / sv(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& a) {
  HermitianEig eig = hermitian_eig(a);  // validates square/Hermitian/finite
  const double lmax = eig.eigenvalues.size() ? eig.eigenvalues.maxCoeff() : 0.0;
  const double lmin = eig.eigenvalues.size() ? eig.eigenvalues.minCoeff() : 0.0;
  if (lmin < -1e-10 * std::max(lmax, 0.0))
    throw NotPsdError("psd_sqrt: negative eigenvalue beyond round-off");
  RealVector roots = eig.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  ComplexMatrix s = eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
  return 0.5 * (s + s.adjoint());  // exact Hermitian symmetry
}

RangeBasis range_basis(const ComplexMatrix& a, double rank_tol) {
  HermitianEig eig = hermitian_eig(a);
  const double lmax = eig.eigenvalues.size() ? eig.eigenvalues.maxCoeff() : 0.0;
  const double lmin = eig.eigenvalues.size() ? eig.eigenvalues.minCoeff() : 0.0;
  if (lmin < -1e-10 * std::max(lmax, 0.0))
    throw NotPsdError("range_basis: matrix is not PSD");
  const double tol = resolve_rank_tol(rank_tol, a.rows());
  const double cutoff = tol * std::max(lmax, 0.0);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (eig.eigenvalues(i) > cutoff) ++r;
  // eigenvalues ascending, so the range directions sit in the last r columns
  RangeBasis out;
  out.rank = r;
  out.u = eig.eigenvectors.rightCols(r);
  return out;
}

}  // namespace semirad
