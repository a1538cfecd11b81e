#pragma once

#include <stdexcept>
#include <string>

namespace heavyloc {

// Invalid argument to any model, matrix or statistics routine.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// A quantity left the representable range (overflowing variate, runaway log-scale).
class SaturationError : public std::runtime_error {
 public:
  explicit SaturationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace heavyloc
