#pragma once

#include <stdexcept>
#include <string>

namespace zoll {

// Base of every error raised by the library. The CLI maps subclasses onto
// stable exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Degenerate geometric input: coincident points, zero tangents, out-of-range
// arclength parameters.
class GeometryError : public Error {
 public:
  using Error::Error;
};

// A candidate point set violates one of the fineness conditions.
class FinenessError : public Error {
 public:
  enum class Condition { collinearity, concurrency, hemispheres, duplicate_or_antipodal };

  FinenessError(Condition condition, const std::string& what) : Error(what), condition_(condition) {}

  Condition condition() const { return condition_; }

 private:
  Condition condition_;
};

const char* to_string(FinenessError::Condition condition);

// A sampled (p, v) has no acute witness half-circle with negative integral,
// or a Y-like check that must hold came out with a gap of at least pi.
class GoodnessError : public Error {
 public:
  using Error::Error;
};

// The conformal factor 1 + t f is not positive somewhere.
class DegenerateMetricError : public Error {
 public:
  using Error::Error;
};

class DisconnectedGraphError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input files / configuration.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

}  // namespace zoll
