#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dislo {

/// Precondition or input-validation failure. The message names the violated
/// inequality or the offending key.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two particles coincide (or would after a step). Carries the pair.
class CollisionError : public std::runtime_error {
 public:
  CollisionError(std::size_t i, std::size_t j, const std::string& what)
      : std::runtime_error(what), first(i), second(j) {}
  std::size_t first;
  std::size_t second;
};

/// Time step violates the stability restriction of the scheme.
class StepSizeError : public std::runtime_error {
 public:
  StepSizeError(double admissible, const std::string& what)
      : std::runtime_error(what), admissible_dt(admissible) {}
  double admissible_dt;
};

/// State no longer satisfies a model invariant (e.g. negative density).
class InvalidStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// kappa_y dropped below the positivity floor. Carries the grid location.
class DegenerateGradientError : public std::runtime_error {
 public:
  DegenerateGradientError(double y, const std::string& what)
      : std::runtime_error(what), location(y) {}
  double location;
};

/// Curve became self-intersecting (singularity formation).
class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation requested at the kernel singularity.
class SingularPointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dislo
