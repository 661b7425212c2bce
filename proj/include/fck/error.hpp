#pragma once

#include <stdexcept>
#include <string>

namespace fck {

/// Shapes do not conform (matrix product, block assembly, chain-map components).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two operands live over different rings, or the ring cannot support the operation.
class RingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A structural precondition failed (invalid cube, bad coordinate, mismatched context).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace fck
