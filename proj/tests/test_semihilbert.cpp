#include <doctest.h>

#include <semirad/ensembles.hpp>
#include <semirad/rng.hpp>
#include <semirad/semihilbert.hpp>

using namespace semirad;

namespace {

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

ComplexVector e(int i, int n) {
  ComplexVector v = ComplexVector::Zero(n);
  v(i) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("make_context on stated examples") {
  AContext ctx = make_context(ComplexMatrix::Identity(2, 2));
  CHECK(ctx.rank == 2);
  CHECK((ctx.sqrt_a - ComplexMatrix::Identity(2, 2)).norm() <= 1e-12);

  ctx = make_context(diag2(1, 0));
  CHECK(ctx.rank == 1);
  CHECK(std::abs(std::abs(ctx.u(0, 0)) - 1.0) <= 1e-12);

  ComplexMatrix a(2, 2);
  a << 2.0, 1.0, 1.0, 2.0;
  ctx = make_context(a);
  CHECK(ctx.rank == 2);
  CHECK((ctx.sqrt_a * ctx.sqrt_a - a).norm() <= 1e-12);
  CHECK((ctx.range_projector() * a - a).norm() <= 1e-9);
}

TEST_CASE("make_context rejects bad input") {
  CHECK_THROWS_AS(make_context(ComplexMatrix::Zero(2, 2)), ZeroOperatorError);
  CHECK_THROWS_AS(make_context(diag2(1, -1)), NotPsdError);
}

TEST_CASE("a_inner and a_norm") {
  AContext id = make_context(ComplexMatrix::Identity(2, 2));
  CHECK(a_inner(id, e(0, 2), e(0, 2)) == Complex(1, 0));

  AContext deg = make_context(diag2(1, 0));
  CHECK(a_norm(deg, e(1, 2)) == 0.0);  // kernel vector, seminorm degeneracy

  AContext d23 = make_context(diag2(2, 3));
  ComplexVector ones(2);
  ones << 1.0, 1.0;
  CHECK(a_inner(d23, ones, ones).real() == doctest::Approx(5.0));

  CHECK_THROWS_AS(a_inner(id, ComplexVector::Zero(3), e(0, 2)),
                  DimensionMismatchError);
}

TEST_CASE("cauchy-schwarz for the A-form") {
  for (std::uint64_t s = 1; s <= 50; ++s) {
    const int n = 2 + static_cast<int>(s % 4);
    AContext ctx = make_context(random_psd(n, 1 + static_cast<int>(s % n), s));
    SplitMix64 g(s * 7 + 1);
    ComplexVector x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x(i) = g.complex_gaussian();
      y(i) = g.complex_gaussian();
    }
    CHECK(std::abs(a_inner(ctx, x, y)) <=
          a_norm(ctx, x) * a_norm(ctx, y) + 1e-12);
  }
}

TEST_CASE("admits_a_adjoint via the Douglas criterion") {
  AContext id = make_context(ComplexMatrix::Identity(2, 2));
  ComplexMatrix t(2, 2);
  t << Complex(1, 2), Complex(0, -1), 3.0, 0.5;
  CHECK(admits_a_adjoint(id, t));  // invertible A: everything qualifies

  AContext deg = make_context(diag2(1, 0));
  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;  // T*A has range along e2, outside range(A) = span(e1)
  CHECK_FALSE(admits_a_adjoint(deg, bad));
  CHECK_THROWS_AS(a_adjoint(deg, bad), NoAAdjointError);

  // construction through (A^{1/2})+ S A^{1/2} always lands inside
  for (std::uint64_t s = 1; s <= 20; ++s) {
    AContext ctx = make_context(random_psd(4, 2, s));
    ComplexMatrix good = random_compatible(ctx, OperandKind::Generic, s + 100);
    CHECK(admits_a_adjoint(ctx, good));
  }
}

TEST_CASE("a_adjoint on stated examples") {
  AContext id = make_context(ComplexMatrix::Identity(2, 2));
  ComplexMatrix t(2, 2);
  t << Complex(1, 2), Complex(0, -1), 3.0, 0.5;
  CHECK((a_adjoint(id, t) - t.adjoint()).norm() <= 1e-12);

  AContext d12 = make_context(diag2(1, 2));
  ComplexMatrix j = ComplexMatrix::Zero(2, 2);
  j(0, 1) = 1.0;
  ComplexMatrix sharp = a_adjoint(d12, j);
  CHECK(std::abs(sharp(1, 0) - Complex(0.5, 0)) <= 1e-12);
  CHECK(std::abs(sharp(0, 0)) + std::abs(sharp(0, 1)) + std::abs(sharp(1, 1)) <=
        1e-12);

  AContext deg = make_context(diag2(1, 0));
  ComplexMatrix d25 = diag2(2, 5);
  ComplexMatrix sharp2 = a_adjoint(deg, d25);
  CHECK(std::abs(sharp2(0, 0) - Complex(2, 0)) <= 1e-12);
  CHECK(std::abs(sharp2(1, 1)) <= 1e-12);
}

TEST_CASE("a_adjoint solves AX = T*A with range inside range(A)") {
  for (std::uint64_t s = 1; s <= 50; ++s) {
    const int n = 2 + static_cast<int>(s % 4);
    const int r = 1 + static_cast<int>(s % n);
    AContext ctx = make_context(random_psd(n, r, s));
    ComplexMatrix t = random_compatible(ctx, OperandKind::Generic, s + 7);
    ComplexMatrix sharp = a_adjoint(ctx, t);
    CHECK((ctx.a * sharp - t.adjoint() * ctx.a).norm() <=
          ctx.residual_tol * (1.0 + ctx.a.norm() * t.norm()));
    const ComplexMatrix outside =
        sharp - ctx.u * (ctx.u.adjoint() * sharp);
    CHECK(outside.norm() <= ctx.residual_tol * (1.0 + sharp.norm()));
  }
}

TEST_CASE("double and triple sharp") {
  for (std::uint64_t s = 1; s <= 100; ++s) {
    const int n = 2 + static_cast<int>(s % 5);
    const int r = 1 + static_cast<int>((s * 3) % n);
    AContext ctx = make_context(random_psd(n, r, s * 13));
    ComplexMatrix t = random_compatible(ctx, OperandKind::Generic, s);
    const ComplexMatrix sharp = a_adjoint(ctx, t);
    const ComplexMatrix dd = a_adjoint(ctx, sharp);
    const ComplexMatrix p = ctx.range_projector();
    CHECK((dd - p * t * p).norm() <= 1e-8 * (1.0 + t.norm()));
    CHECK((a_adjoint(ctx, dd) - sharp).norm() <= 1e-8 * (1.0 + sharp.norm()));
  }
}

TEST_CASE("cartesian decomposition") {
  AContext id = make_context(ComplexMatrix::Identity(2, 2));
  ComplexMatrix h(2, 2);
  h << 1.0, Complex(0, 1), Complex(0, -1), -2.0;  // Hermitian
  auto [re_h, im_h] = cartesian(id, h);
  CHECK((re_h - h).norm() <= 1e-12);
  CHECK(im_h.norm() <= 1e-12);

  auto [re_ih, im_ih] = cartesian(id, ComplexMatrix(Complex(0, 1) * h));
  CHECK(re_ih.norm() <= 1e-12);
  CHECK((im_ih - h).norm() <= 1e-12);

  AContext d12 = make_context(diag2(1, 2));
  ComplexMatrix j = ComplexMatrix::Zero(2, 2);
  j(0, 1) = 1.0;
  auto [re_j, im_j] = cartesian(d12, j);
  CHECK(std::abs(re_j(0, 1) - Complex(0.5, 0)) <= 1e-12);
  CHECK(std::abs(re_j(1, 0) - Complex(0.25, 0)) <= 1e-12);

  // reassembly and A-selfadjointness of both parts
  for (std::uint64_t s = 1; s <= 30; ++s) {
    AContext ctx = make_context(random_psd(3, 2, s));
    ComplexMatrix t = random_compatible(ctx, OperandKind::Generic, s + 5);
    auto [re, im] = cartesian(ctx, t);
    CHECK((re + Complex(0, 1) * im - t).norm() <= 1e-12 * (1.0 + t.norm()));
    CHECK(is_a_selfadjoint(ctx, re));
    CHECK(is_a_selfadjoint(ctx, im));
  }
}

TEST_CASE("rank_one_a") {
  AContext id = make_context(ComplexMatrix::Identity(2, 2));
  ComplexMatrix p = rank_one_a(id, e(0, 2));
  CHECK((p - e(0, 2) * e(0, 2).adjoint()).norm() <= 1e-12);

  AContext d41 = make_context(diag2(4, 1));
  ComplexVector x(2);
  x << 0.5, 0.0;  // A-unit: <Ax,x> = 4 * 0.25 = 1
  ComplexMatrix t = rank_one_a(d41, x);
  CHECK((t * x - x).norm() <= 1e-12);
  CHECK((t * t - t).norm() <= 1e-10);  // A-projection

  for (std::uint64_t s = 1; s <= 20; ++s) {
    AContext ctx = make_context(random_psd(4, 3, s));
    ComplexVector u = random_a_unit(ctx, s + 9);
    ComplexMatrix r1 = rank_one_a(ctx, u);
    CHECK((r1 * r1 - r1).norm() <= 1e-10 * (1.0 + r1.norm()));
    // action is z -> <z,u>_A u
    SplitMix64 g(s);
    ComplexVector z(4);
    for (int i = 0; i < 4; ++i) z(i) = g.complex_gaussian();
    CHECK((r1 * z - a_inner(ctx, z, u) * u).norm() <= 1e-12 * (1.0 + z.norm()));
  }

  AContext deg = make_context(diag2(1, 0));
  CHECK_THROWS_AS(rank_one_a(deg, e(1, 2)), DegenerateVectorError);
}

TEST_CASE("reduce on stated examples") {
  AContext id = make_context(ComplexMatrix::Identity(2, 2));
  ComplexMatrix t(2, 2);
  t << 1.0, Complex(2, 1), 0.0, -3.0;
  ComplexMatrix m = reduce(id, t);
  // for A = I the compression is unitarily equivalent to T; compare spectra
  CHECK(std::abs(m.trace() - t.trace()) <= 1e-12);
  CHECK(std::abs(m.determinant() - t.determinant()) <= 1e-10);

  AContext deg = make_context(diag2(1, 0));
  ComplexMatrix d25 = diag2(2, 5);
  ComplexMatrix m1 = reduce(deg, d25);
  REQUIRE(m1.rows() == 1);
  CHECK(std::abs(m1(0, 0) - Complex(2, 0)) <= 1e-12);

  AContext d12 = make_context(diag2(1, 2));
  ComplexMatrix j = ComplexMatrix::Zero(2, 2);
  j(0, 1) = 1.0;
  ComplexMatrix mj = reduce(d12, j);
  // dense evaluation of U* A^{1/2} T (A^{1/2})+ U
  const ComplexMatrix expect = d12.u.adjoint() *
                               (d12.sqrt_a * j * d12.sqrt_a_pinv) * d12.u;
  CHECK((mj - expect).norm() <= 1e-14);
  CHECK(mj.cwiseAbs().maxCoeff() == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("reduce rejects operators that crush the kernel into the range") {
  AContext deg = make_context(diag2(1, 0));
  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;  // maps kernel vector e2 to e1 with nonzero seminorm
  CHECK_FALSE(is_a_bounded(deg, bad));
  CHECK_THROWS_AS(reduce(deg, bad), NotABoundedError);
}

TEST_CASE("reduce respects adjoint, products and linear combinations") {
  for (std::uint64_t s = 1; s <= 100; ++s) {
    const int n = 2 + static_cast<int>(s % 5);
    const int r = 1 + static_cast<int>((s * 5) % n);
    AContext ctx = make_context(random_psd(n, r, s * 31));
    ComplexMatrix t = random_compatible(ctx, OperandKind::Generic, s);
    ComplexMatrix w = random_compatible(ctx, OperandKind::Generic, s + 1000);
    const ComplexMatrix mt = reduce(ctx, t);
    const ComplexMatrix mw = reduce(ctx, w);
    const double sc = 1.0 + mt.norm() + mw.norm();

    CHECK((reduce(ctx, a_adjoint(ctx, t)) - mt.adjoint()).norm() <= 1e-8 * sc);
    CHECK((reduce(ctx, ComplexMatrix(w * t)) - mw * mt).norm() <=
          1e-8 * sc * sc);
    SplitMix64 g(s);
    const Complex lam = g.complex_gaussian();
    CHECK((reduce(ctx, ComplexMatrix(w + lam * t)) - (mw + lam * mt)).norm() <=
          1e-8 * sc * (1.0 + std::abs(lam)));
  }
}

TEST_CASE("make_a_operator caches sharp and reduced eagerly") {
  AContext ctx = make_context(random_psd(3, 2, 77));
  ComplexMatrix t = random_compatible(ctx, OperandKind::Generic, 78);
  AOperator op = make_a_operator(ctx, t);
  REQUIRE(op.sharp.has_value());
  REQUIRE(op.reduced.has_value());
  CHECK((*op.sharp - a_adjoint(ctx, t)).norm() == 0.0);
  CHECK((*op.reduced - reduce(ctx, t)).norm() == 0.0);

  AContext deg = make_context(diag2(1, 0));
  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  AOperator nop = make_a_operator(deg, bad);
  CHECK_FALSE(nop.sharp.has_value());
  CHECK_FALSE(nop.reduced.has_value());
}
