#ifndef KAFT_ERRORS_HPP
#define KAFT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kaft {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// (N, k, a) violates the standing admissibility assumptions.
struct InadmissibleParams : Error {
  using Error::Error;
};

/// Pointwise evaluation requested at x = 0 where the weight or operator is singular.
struct SingularAtOrigin : Error {
  using Error::Error;
};

/// Quadrature construction failed its calibration identity.
struct QuadratureFailure : Error {
  using Error::Error;
};

/// Basis orthonormalization did not reach the required Gram tolerance.
struct GramFailure : Error {
  using Error::Error;
};

/// Assembled oscillator matrix deviated too far from symmetry.
struct SelfAdjointnessDefect : Error {
  using Error::Error;
};

/// Input lies too far outside the resolvable basis span.
struct ProjectionResidualTooLarge : Error {
  using Error::Error;
};

/// Exponent tuple outside the range of the inequality being evaluated.
struct ExponentOutOfRange : Error {
  using Error::Error;
};

/// Paley functional of the requested weight is infinite.
struct InfinitePaleyFunctional : Error {
  using Error::Error;
};

/// Hormander bound is infinite; the multiplier theorem gives no information.
struct BoundInfinite : Error {
  using Error::Error;
};

/// Fixed-point iteration failed to converge within the iteration budget.
struct NoConvergence : Error {
  double last_residual;
  NoConvergence(const std::string& msg, double residual)
      : Error(msg), last_residual(residual) {}
};

}  // namespace kaft

#endif  // KAFT_ERRORS_HPP
