#pragma once

#include <stdexcept>

namespace sns {

// Bad user-supplied files or configuration: CSV/JSON parse failures,
// inconsistent dimensions between inputs.
struct data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failure: non-positive-definite matrix, degenerate configuration,
// degenerate identification constraint. Surfaced, never patched over.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sns
