#pragma once

#include <stdexcept>
#include <string>

namespace skewmix {

/// Invalid argument or configuration (unknown names, bad parameter ranges).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A combinatorial cap (word count, search range) was exceeded.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A numerical invariant failed: non-convergence, eigenvalue checks, residuals.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace skewmix
