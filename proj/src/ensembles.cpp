#include "semirad/ensembles.hpp"

#include "semirad/rng.hpp"

namespace semirad {

namespace {

ComplexMatrix ginibre(SplitMix64& g, Eigen::Index rows, Eigen::Index cols) {
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = g.complex_gaussian();
  return m;
}

}  // namespace

const char* to_string(OperandKind k) {
  switch (k) {
    case OperandKind::Generic: return "generic";
    case OperandKind::ASelfAdjoint: return "selfadjoint";
    case OperandKind::RankOneA: return "rankone";
    case OperandKind::Nilpotent: return "nilpotent";
    case OperandKind::CommutingPair: return "commuting";
    case OperandKind::Zero: return "zero";
  }
  return "generic";
}

OperandKind operand_kind_from_string(const std::string& s) {
  if (s == "generic") return OperandKind::Generic;
  if (s == "selfadjoint") return OperandKind::ASelfAdjoint;
  if (s == "rankone") return OperandKind::RankOneA;
  if (s == "nilpotent") return OperandKind::Nilpotent;
  if (s == "commuting") return OperandKind::CommutingPair;
  if (s == "zero") return OperandKind::Zero;
  throw BadParameterError("unknown operand kind: " + s);
}

ComplexMatrix random_psd(int dim, int a_rank, std::uint64_t seed) {
  if (a_rank < 0) a_rank = dim;
  if (dim < 1 || a_rank < 1 || a_rank > dim)
    throw BadParameterError("random_psd: need 1 <= a_rank <= dim");
  SplitMix64 g(derive_stream(seed, {0x50}));
  const ComplexMatrix gmat = ginibre(g, a_rank, dim);
  ComplexMatrix a = gmat.adjoint() * gmat;
  return 0.5 * (a + a.adjoint());
}

ComplexMatrix random_compatible(const AContext& ctx, OperandKind kind,
                                std::uint64_t seed, double scale) {
  const Eigen::Index n = ctx.dim();
  SplitMix64 g(derive_stream(seed, {0x51, static_cast<std::uint64_t>(kind)}));
  switch (kind) {
    case OperandKind::Zero:
      return ComplexMatrix::Zero(n, n);
    case OperandKind::Generic: {
      const ComplexMatrix s = ginibre(g, n, n);
      return scale * (ctx.sqrt_a_pinv * s * ctx.sqrt_a);
    }
    case OperandKind::ASelfAdjoint: {
      const ComplexMatrix s = ginibre(g, n, n);
      const ComplexMatrix t = scale * (ctx.sqrt_a_pinv * s * ctx.sqrt_a);
      return 0.5 * (t + a_adjoint(ctx, t));
    }
    case OperandKind::RankOneA:
      return scale * rank_one_a(ctx, random_a_unit(ctx, g.next()));
    case OperandKind::Nilpotent: {
      // strictly upper triangular in the range basis, then lifted; the
      // compression is genuinely nilpotent even for rank-deficient A
      ComplexMatrix r = ComplexMatrix::Zero(ctx.rank, ctx.rank);
      for (Eigen::Index i = 0; i < ctx.rank; ++i)
        for (Eigen::Index j = i + 1; j < ctx.rank; ++j)
          r(i, j) = g.complex_gaussian();
      return scale *
             (ctx.sqrt_a_pinv * ctx.u * r * ctx.u.adjoint() * ctx.sqrt_a);
    }
    case OperandKind::CommutingPair: {
      // single-operand request: just hand back a generic compatible operator
      const ComplexMatrix s = ginibre(g, n, n);
      return scale * (ctx.sqrt_a_pinv * s * ctx.sqrt_a);
    }
  }
  throw BadParameterError("random_compatible: unhandled kind");
}

std::pair<ComplexMatrix, ComplexMatrix> random_operand_pair(const AContext& ctx,
                                                            OperandKind kind,
                                                            std::uint64_t seed,
                                                            double scale) {
  const std::uint64_t s1 = derive_stream(seed, {1});
  const std::uint64_t s2 = derive_stream(seed, {2});
  switch (kind) {
    case OperandKind::CommutingPair: {
      const ComplexMatrix b =
          random_compatible(ctx, OperandKind::Generic, s1, scale);
      SplitMix64 g(derive_stream(seed, {3}));
      const Complex c0 = g.complex_gaussian(), c1 = g.complex_gaussian(),
                    c2 = g.complex_gaussian();
      ComplexMatrix c = c0 * ComplexMatrix::Identity(ctx.dim(), ctx.dim()) +
                        c1 * b + (c2 / std::max(1.0, b.norm())) * (b * b);
      return {b, std::move(c)};
    }
    case OperandKind::Zero:
      return {random_compatible(ctx, OperandKind::Generic, s1, scale),
              ComplexMatrix::Zero(ctx.dim(), ctx.dim())};
    default:
      return {random_compatible(ctx, kind, s1, scale),
              random_compatible(ctx, kind, s2, scale)};
  }
}

EnsembleDraw generate(const EnsembleSpec& spec) {
  if (spec.dim < 1 || spec.dim > 64)
    throw BadParameterError("generate: dim must lie in [1, 64]");
  const int rank = spec.a_rank < 0 ? spec.dim : spec.a_rank;
  if (rank < 1 || rank > spec.dim)
    throw BadParameterError("generate: need 1 <= a_rank <= dim");
  if (!(spec.scale > 0.0) || spec.scale > 1e3)
    throw BadParameterError("generate: scale must lie in (0, 1e3]");
  EnsembleDraw draw;
  draw.a = random_psd(spec.dim, rank, derive_stream(spec.seed, {0x40}));
  draw.ctx = make_context(draw.a);
  auto [b, c] = random_operand_pair(draw.ctx, spec.kind,
                                    derive_stream(spec.seed, {0x41}), spec.scale);
  draw.b = std::move(b);
  draw.c = std::move(c);
  return draw;
}

ComplexVector random_a_unit(const AContext& ctx, std::uint64_t seed) {
  SplitMix64 g(derive_stream(seed, {0x52}));
  const Eigen::Index n = ctx.dim();
  for (int attempt = 0; attempt < 64; ++attempt) {
    ComplexVector u(n);
    for (Eigen::Index i = 0; i < n; ++i) u(i) = g.complex_gaussian();
    ComplexVector x = ctx.sqrt_a_pinv * u;
    ComplexVector k(n);
    for (Eigen::Index i = 0; i < n; ++i) k(i) = g.complex_gaussian();
    k -= ctx.u * (ctx.u.adjoint() * k);
    if (k.norm() > 0.0) k *= g.uniform(0.0, 1.0) * x.norm() / k.norm();
    x += k;
    const double an = a_norm(ctx, x);
    if (an > 1e-12) return x / an;
  }
  throw DegenerateVectorError("random_a_unit: sampling failed");
}

}  // namespace semirad
