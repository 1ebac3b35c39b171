#pragma once

#include <stdexcept>
#include <string>

namespace becwh {

/// Input outside an operation's domain (inside the throat, imaginary sound
/// speed, superluminal observer, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation hit a pole of a rational map. `location` carries the
/// coordinate of the pole when it is known (NaN otherwise).
class PoleError : public std::runtime_error {
 public:
  PoleError(const std::string& what, double location)
      : std::runtime_error(what), location_(location) {}
  double location() const noexcept { return location_; }

 private:
  double location_;
};

/// An iterative method failed to meet its tolerance.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double estimate, double error_estimate,
               int evaluations)
      : std::runtime_error(what),
        estimate_(estimate),
        error_estimate_(error_estimate),
        evaluations_(evaluations) {}
  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }
  int evaluations() const noexcept { return evaluations_; }

 private:
  double estimate_;
  double error_estimate_;
  int evaluations_;
};

}  // namespace becwh
