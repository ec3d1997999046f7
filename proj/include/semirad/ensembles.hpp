#pragma once

#include <utility>

#include "semirad/semihilbert.hpp"
#include "semirad/types.hpp"

namespace semirad {

// Seeded generation of contexts and operands.  Everything is a pure function
// of its seed (SplitMix64 streams, Box-Muller gaussians), so identical specs
// produce bit-identical operands.
//
// Compatible operands are built as T = (A^{1/2})+ S A^{1/2} with S complex
// Ginibre, which forces range(T*A) inside range(A), so admits_a_adjoint holds
// by construction.  Structured kinds derive from that: A-selfadjoint takes
// the A-real part, Nilpotent conjugates a strictly upper-triangular matrix
// expressed in the range basis, CommutingPair takes a random quadratic
// polynomial as the partner.

enum class OperandKind {
  Generic,
  ASelfAdjoint,
  RankOneA,
  Nilpotent,
  CommutingPair,
  Zero,
};

const char* to_string(OperandKind k);
OperandKind operand_kind_from_string(const std::string& s);

struct EnsembleSpec {
  int dim = 2;
  int a_rank = -1;  // -1 means full
  OperandKind kind = OperandKind::Generic;
  double scale = 1.0;
  std::uint64_t seed = 0;
};

struct EnsembleDraw {
  ComplexMatrix a;
  AContext ctx;
  ComplexMatrix b, c;
};

// Validates the fields (dim in [1,64], 1 <= a_rank <= dim, scale in (0, 1e3])
// and draws a context plus an operand pair of the requested kind.
EnsembleDraw generate(const EnsembleSpec& spec);

// A = G* G with G an a_rank x dim complex standard-normal matrix; Hermitian
// PSD by construction, rank a_rank with probability one.
ComplexMatrix random_psd(int dim, int a_rank, std::uint64_t seed);

ComplexMatrix random_compatible(const AContext& ctx, OperandKind kind,
                                std::uint64_t seed, double scale = 1.0);

// Pair generation for campaign trials; for CommutingPair the second operand
// is a random quadratic polynomial in the first.
std::pair<ComplexMatrix, ComplexMatrix> random_operand_pair(const AContext& ctx,
                                                            OperandKind kind,
                                                            std::uint64_t seed,
                                                            double scale = 1.0);

// Random A-unit vector supported on the range of A plus kernel noise.
ComplexVector random_a_unit(const AContext& ctx, std::uint64_t seed);

}  // namespace semirad
