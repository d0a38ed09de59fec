#pragma once

#include <stdexcept>
#include <string>

namespace qct {

/// Bad user input: out-of-range parameters, malformed schedules, frame misuse.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameter set that can never produce a valid protocol (e.g. R < D/4).
class InfeasibleError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Operation received a state expressed in a different frame than required.
class FrameMismatchError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// State outside the supported class (e.g. mixed covariance where a pure
/// state is required).
class UnsupportedStateError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Wavepacket reached the edge of the spatial grid.
class GridDomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two independent computations of the same quantity disagree.
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qct
