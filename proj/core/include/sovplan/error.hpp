#pragma once

#include <stdexcept>
#include <string>

namespace sovplan {

/// Invalid user input: malformed documents, out-of-range parameters,
/// references to unknown nodes. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed (exit code 4).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sovplan
