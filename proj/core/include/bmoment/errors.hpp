#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bmoment {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input text or files. Maps to CLI exit code 1.
struct ParseError : Error {
  explicit ParseError(const std::string& msg, std::size_t byte_position = 0)
      : Error(msg), byte(byte_position) {}
  std::size_t byte;
};

/// A mathematically invalid object or a failed structural check.
/// Maps to CLI exit code 2.
struct ValidationError : Error {
  using Error::Error;
};

struct DimensionMismatchError : ValidationError {
  using ValidationError::ValidationError;
};

/// Graph with at least one zero and one nonzero modular weight.
/// The dichotomy theorem rules this out for b-symplectic manifolds,
/// so the toolkit rejects it as invalid input.
struct MixedWeightsError : ValidationError {
  using ValidationError::ValidationError;
};

/// Edge weights whose kernels disagree; no common t_Z exists.
struct KernelsDifferError : ValidationError {
  using ValidationError::ValidationError;
};

/// Operation invoked with its documented precondition unmet.
struct PreconditionError : ValidationError {
  using ValidationError::ValidationError;
};

/// Symplectic cut requested at a zero-weight component.  The cut level
/// is never attained there, which is exactly the mechanism behind the
/// no-coexistence theorem.
struct ZeroWeightCutError : ValidationError {
  using ValidationError::ValidationError;
};

/// A numerical fit whose cross-scale spread exceeds its tolerance.
struct NonConvergentFitError : ValidationError {
  using ValidationError::ValidationError;
};

}  // namespace bmoment
