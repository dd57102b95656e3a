#pragma once

#include <stdexcept>
#include <string>

namespace chiralpump {

/// Configuration / input problems (bad config file, unknown preset, bad key).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Physics or state-validity problems (invalid parameters, corrupted state,
/// stability-bound violations, undefined observables).
class PhysicsError : public std::runtime_error {
 public:
  explicit PhysicsError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The Liouvillian null space has dimension != 1, so the stationary state is
/// not unique (or absent at the working tolerance).
class DegenerateSteadyStateError : public PhysicsError {
 public:
  DegenerateSteadyStateError(int null_dimension, const std::string& msg)
      : PhysicsError(msg), null_dimension_(null_dimension) {}
  int null_dimension() const { return null_dimension_; }

 private:
  int null_dimension_;
};

}  // namespace chiralpump
