#pragma once

#include <stdexcept>
#include <string>

namespace qnoise {

/// Bad input: out-of-range parameters, malformed files, unsupported units.
/// CLI maps this to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not deliver its contract (quadrature did not
/// converge, circulant embedding needed too much clipping). CLI exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qnoise
