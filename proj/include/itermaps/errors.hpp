#pragma once

#include <stdexcept>
#include <string>

namespace itermaps {

/// Why a single map evaluation could not produce a next iterate.
enum class StepErrorKind {
  ModelSingular,            // |phi| (or |f'|) fell below the denominator floor
  InsufficientDerivatives,  // the problem does not carry a derivative the map needs
  NonFinite,                // f or a derivative evaluated to NaN/inf
};

inline const char* to_string(StepErrorKind kind) {
  switch (kind) {
    case StepErrorKind::ModelSingular: return "model-singular";
    case StepErrorKind::InsufficientDerivatives: return "insufficient-derivatives";
    case StepErrorKind::NonFinite: return "non-finite";
  }
  return "unknown";
}

class StepError : public std::runtime_error {
 public:
  StepError(StepErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  StepErrorKind kind() const noexcept { return kind_; }

 private:
  StepErrorKind kind_;
};

/// Exact elimination met a zero column below the diagonal.
class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Too few usable error ratios to estimate a convergence order.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A user-supplied problem (file or spec string) is malformed.
class ProblemDefinitionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace itermaps
