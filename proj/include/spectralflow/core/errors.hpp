// Error types shared across the library. Input validation throws
// std::invalid_argument / std::domain_error; the types below mark
// conditions a caller can recover from by changing numerical knobs.
#ifndef SPECTRALFLOW_CORE_ERRORS_HPP
#define SPECTRALFLOW_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spectralflow {

/// Requested accuracy cannot be met with the given spectrum cutoff,
/// expansion order or step size. The message names the usable range.
class AccuracyError : public std::runtime_error {
 public:
  explicit AccuracyError(const std::string& what) : std::runtime_error(what) {}
};

/// Least-squares extraction of heat coefficients failed (ill-conditioned
/// design matrix); the message advises a different t-grid or order.
class FitError : public std::runtime_error {
 public:
  explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

/// Ricci flow queried at or past the extinction time.
class ExtinctionError : public std::runtime_error {
 public:
  ExtinctionError(const std::string& what, double t_ext)
      : std::runtime_error(what), extinction_time(t_ext) {}
  double extinction_time;
};

/// Explicit flow step rejected because the stability bound was violated.
class RejectedStepError : public std::runtime_error {
 public:
  explicit RejectedStepError(const std::string& what) : std::runtime_error(what) {}
};

/// Manifold kind (or dimension) not covered by the closed-form evaluators.
class UnsupportedManifoldError : public std::runtime_error {
 public:
  explicit UnsupportedManifoldError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spectralflow

#endif
