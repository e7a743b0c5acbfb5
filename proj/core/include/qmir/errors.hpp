#pragma once

#include <stdexcept>
#include <string>

namespace qmir {

// Bad input data: malformed config files, unresolved references,
// out-of-range physical constants. The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical procedure failed to meet its stated tolerance: quadrature
// that cannot reach rel_tol, phase unwrapping over an under-resolved grid,
// non-converging derivative estimates, catastrophic cancellation.
// The CLI maps this to exit code 2.
class NumericsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qmir
