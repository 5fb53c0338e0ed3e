#pragma once

#include <stdexcept>
#include <string>

namespace phasedr {

// Bad inputs: shape/length mismatches, out-of-range parameters, malformed files.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Non-finite iterates, failed orthonormalization, unconverged eigen-solves.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace phasedr
