#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace semirad {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// ---------------------------------------------------------------------------
// Error hierarchy. Every precondition violation maps to one of these so the
// CLI can translate them into stable exit codes.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHermitianError : Error { using Error::Error; };
struct NonFiniteError : Error { using Error::Error; };
struct NotPsdError : Error { using Error::Error; };
struct ZeroOperatorError : Error { using Error::Error; };
struct DimensionMismatchError : Error { using Error::Error; };
struct NoAAdjointError : Error { using Error::Error; };
struct NotABoundedError : Error { using Error::Error; };
struct DegenerateVectorError : Error { using Error::Error; };
struct BadParameterError : Error { using Error::Error; };
struct SchemaMismatchError : Error { using Error::Error; };
struct ConfigInvalidError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// Result of a sup/inf computation.
//
// `value` is always reproducible by evaluating the underlying objective at
// `witness` (and `theta`, plus `t`/`phi` for pair quantities).  For
// LowerEstimate results the true supremum lies in [value, value + gap]
// whenever the refinement certificate applies; `gap` is infinite when no
// certificate is claimed (oracle estimates).
// ---------------------------------------------------------------------------

enum class ErrorDirection { LowerEstimate, Exact, UpperEstimate };

struct RadiusResult {
  double value = 0.0;
  ComplexVector witness;               // unit vector in the space the optimizer ran over
  double theta = 0.0;                  // rotation angle of the best direction
  std::optional<double> t;             // mixing angle, pair quantities only
  std::optional<double> phi;           // relative phase, pair quantities only
  ErrorDirection direction = ErrorDirection::LowerEstimate;
  double gap = 0.0;
};

inline const char* to_string(ErrorDirection d) {
  switch (d) {
    case ErrorDirection::LowerEstimate: return "lower_estimate";
    case ErrorDirection::Exact: return "exact";
    case ErrorDirection::UpperEstimate: return "upper_estimate";
  }
  return "unknown";
}

// FNV-1a over the dimensions and raw entry bytes; used to key evaluation
// caches and to fingerprint operands in reports.
std::uint64_t matrix_digest(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m);
double frobenius(const ComplexMatrix& m);

// (M + M*)/2 as a new matrix; safe to assign back to the argument.
inline ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

}  // namespace semirad
