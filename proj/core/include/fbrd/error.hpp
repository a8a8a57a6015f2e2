#pragma once

#include <stdexcept>
#include <string>

namespace fbrd {

/// A precondition on an argument was violated (out-of-range parameter,
/// wrong regime for the requested construction, malformed grid).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to produce a result: bracket could not be
/// established, a trajectory left its admissible box, and so on.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fbrd
