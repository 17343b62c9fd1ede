#pragma once

#include <stdexcept>
#include <string>

namespace fqdyn {

// Operands built over different base fields were combined.
class FieldMismatch : public std::invalid_argument {
 public:
  FieldMismatch() : std::invalid_argument("operands belong to different fields") {}
};

// A precondition on the mathematical input failed (zero divisor, degenerate
// map, singular curve, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class PrecisionCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An identity that must hold exactly was observed to fail.  The CLI maps this
// to exit code 3.
class IdentityFalsified : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace fqdyn
