#pragma once

#include <stdexcept>
#include <string>

namespace coopkit {

/// Bad index, malformed input, or a contract violation by the caller.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A structure failed to be natural (or otherwise well formed) where the
/// algebra requires it; e.g. a cone component with no integral preimage.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation outside the supported fragment (e.g. cells of dimension > 2).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace coopkit
