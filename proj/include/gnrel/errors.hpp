#pragma once

#include <stdexcept>
#include <string>

namespace gnrel {

/// Raised when operands violate a precondition: mixed universes, empty
/// conditioning events, malformed measures, trivial targets.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised by exhaustive operations whose input exceeds the enumeration cap.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gnrel
