#pragma once

#include <stdexcept>
#include <string>

namespace iietlab {

// Rule text or a configuration input failed validation.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A numeric procedure failed (eigen iteration stalled, sliver budget blown).
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A standing assumption does not hold for the input (non-primitive matrix
// without an explicit minimality assertion, non-constant length, ...).
class AssumptionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A configurable size cap was exceeded; the request is too large, not wrong.
class CapError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace iietlab
