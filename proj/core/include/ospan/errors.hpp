#pragma once

#include <stdexcept>
#include <string>

namespace ospan {

/// Input violates the metric (or ultrametric) axioms required by an operation.
class MetricViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A generator could not produce an instance with the requested parameters.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A spanner failed its declared stretch bound.
class StretchViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ospan
