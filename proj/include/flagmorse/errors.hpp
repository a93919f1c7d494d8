#pragma once

#include <stdexcept>
#include <string>

namespace flagmorse {

// Bad label/rank/config input (CLI maps this to exit code 2).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical degeneration in the flow modules (rank ambiguity, condition
// blow-up, non-convergence). Carries context in the message.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace flagmorse
