#include <doctest.h>

#include <semirad/numerics.hpp>
#include <semirad/rng.hpp>

using namespace semirad;

namespace {

ComplexMatrix random_matrix(std::uint64_t seed, int n, int m) {
  SplitMix64 g(seed);
  ComplexMatrix a(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = g.complex_gaussian();
  return a;
}

ComplexMatrix random_hermitian(std::uint64_t seed, int n) {
  ComplexMatrix a = random_matrix(seed, n, n);
  return 0.5 * (a + a.adjoint());
}

// independent oracle: the four Penrose conditions
void check_penrose(const ComplexMatrix& m, const ComplexMatrix& p) {
  const double tol = 1e-9 * (1.0 + m.norm());
  CHECK((m * p * m - m).norm() <= tol);
  CHECK((p * m * p - p).norm() <= tol);
  CHECK((ComplexMatrix(m * p) - ComplexMatrix(m * p).adjoint()).norm() <= tol);
  CHECK((ComplexMatrix(p * m) - ComplexMatrix(p * m).adjoint()).norm() <= tol);
}

}  // namespace

TEST_CASE("hermitian_eig on stated examples") {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = -1.0;
  auto eig = hermitian_eig(d);
  CHECK(eig.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(eig.eigenvalues(1) == doctest::Approx(3.0).epsilon(1e-12));

  ComplexMatrix x = ComplexMatrix::Zero(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  eig = hermitian_eig(x);
  CHECK(eig.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(eig.eigenvalues(1) == doctest::Approx(1.0));

  eig = hermitian_eig(ComplexMatrix::Zero(3, 3));
  for (int i = 0; i < 3; ++i) CHECK(eig.eigenvalues(i) == 0.0);
}

TEST_CASE("hermitian_eig reconstruction and orthonormality") {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const int n = 2 + static_cast<int>(s % 6);
    ComplexMatrix m = random_hermitian(s, n);
    auto eig = hermitian_eig(m);
    const ComplexMatrix v = eig.eigenvectors;
    ComplexMatrix lam = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) lam(i, i) = eig.eigenvalues(i);
    CHECK((m * v - v * lam).norm() <= 1e-10 * (1.0 + m.norm()));
    CHECK((v.adjoint() * v - ComplexMatrix::Identity(n, n)).norm() <= 1e-10);
    for (int i = 0; i + 1 < n; ++i)
      CHECK(eig.eigenvalues(i) <= eig.eigenvalues(i + 1));
  }
}

TEST_CASE("hermitian_eig rejects bad input") {
  ComplexMatrix m = random_matrix(7, 3, 3);  // generic, not Hermitian
  CHECK_THROWS_AS(hermitian_eig(m), NotHermitianError);
  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(hermitian_eig(bad), NonFiniteError);
}

TEST_CASE("rayleigh quotients never exceed the top eigenvalue") {
  ComplexMatrix m = random_hermitian(42, 4);
  auto eig = hermitian_eig(m);
  const double lmax = eig.eigenvalues(3);
  SplitMix64 g(99);
  for (int k = 0; k < 10000; ++k) {
    ComplexVector x(4);
    for (int i = 0; i < 4; ++i) x(i) = g.complex_gaussian();
    x.normalize();
    const double q = (x.adjoint() * (m * x))(0, 0).real();
    CHECK(q <= lmax + 1e-6);
  }
}

TEST_CASE("pinv on stated examples") {
  CHECK((pinv(ComplexMatrix::Identity(2, 2)) - ComplexMatrix::Identity(2, 2))
            .norm() <= 1e-12);

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  ComplexMatrix dp = pinv(d);
  CHECK(dp(0, 0).real() == doctest::Approx(0.5));
  CHECK(std::abs(dp(1, 1)) <= 1e-14);

  ComplexMatrix j = ComplexMatrix::Zero(2, 2);
  j(0, 1) = 1.0;
  ComplexMatrix jp = pinv(j);
  CHECK(std::abs(jp(1, 0) - Complex(1, 0)) <= 1e-12);
  check_penrose(j, jp);
}

TEST_CASE("pinv satisfies the Penrose conditions on random input") {
  for (std::uint64_t s = 1; s <= 15; ++s) {
    const int n = 2 + static_cast<int>(s % 4);
    ComplexMatrix m = random_matrix(s * 11, n, n);
    if (s % 3 == 0) m.col(0) = m.col(n - 1);  // force rank deficiency
    check_penrose(m, pinv(m));
  }
}

TEST_CASE("pinv is an involution") {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    ComplexMatrix m = random_matrix(s * 17, 4, 4);
    if (s % 2 == 0) m.row(2).setZero();
    CHECK((pinv(pinv(m)) - m).norm() <= 1e-8 * (1.0 + m.norm()));
  }
}

TEST_CASE("psd_sqrt on stated examples") {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 9.0;
  ComplexMatrix s = psd_sqrt(d);
  CHECK(s(0, 0).real() == doctest::Approx(2.0));
  CHECK(s(1, 1).real() == doctest::Approx(3.0));

  CHECK((psd_sqrt(ComplexMatrix::Identity(3, 3)) - ComplexMatrix::Identity(3, 3))
            .norm() <= 1e-12);

  ComplexMatrix a(2, 2);
  a << 2.0, 1.0, 1.0, 2.0;
  s = psd_sqrt(a);
  CHECK((s * s - a).norm() <= 1e-12);
}

TEST_CASE("psd_sqrt commutes with its argument and rejects indefinite input") {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const int n = 3 + static_cast<int>(s % 3);
    ComplexMatrix g = random_matrix(s * 23, n, n);
    ComplexMatrix a = g.adjoint() * g;
    a = hermitian_part(a);
    ComplexMatrix r = psd_sqrt(a);
    CHECK((r * r - a).norm() <= 1e-9 * (1.0 + a.norm()));
    CHECK((r * a - a * r).norm() <= 1e-9 * a.norm() * a.norm());
  }
  ComplexMatrix ind = ComplexMatrix::Identity(2, 2);
  ind(1, 1) = -1.0;
  CHECK_THROWS_AS(psd_sqrt(ind), NotPsdError);
}

TEST_CASE("range_basis rank and projector") {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  auto rb = range_basis(d);
  CHECK(rb.rank == 1);
  CHECK(std::abs(std::abs(rb.u(0, 0)) - 1.0) <= 1e-12);
  CHECK(std::abs(rb.u(1, 0)) <= 1e-12);

  rb = range_basis(ComplexMatrix::Identity(3, 3));
  CHECK(rb.rank == 3);
  CHECK((rb.u * rb.u.adjoint() - ComplexMatrix::Identity(3, 3)).norm() <= 1e-9);

  // rank-2 4x4 PSD built as G* G with G 2x4
  ComplexMatrix g = random_matrix(5, 2, 4);
  ComplexMatrix a = g.adjoint() * g;
  a = hermitian_part(a);
  rb = range_basis(a);
  CHECK(rb.rank == 2);
  const ComplexMatrix p = rb.u * rb.u.adjoint();
  CHECK(((ComplexMatrix::Identity(4, 4) - p) * a).norm() <= 1e-9);
}
