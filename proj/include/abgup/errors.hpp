#pragma once

#include <stdexcept>
#include <string>

namespace abgup {

/// Argument outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation at a pole of a special function (Γ at non-positive integers, ...).
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Integer flux or integer Bessel order on a path that needs 1/sin(νπ).
class SingularConfigurationError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// φ ≡ π, where the amplitude carries the δ(φ−π) term and 1/cos(φ/2) blows up.
class ForwardSingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A numerical procedure failed to reach its accuracy target.
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field could not be evaluated (e.g. inside the flux-line exclusion radius).
class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace abgup
