#pragma once

#include <stdexcept>
#include <string>

namespace tgr {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed text or JSON input.
struct ParseError : Error {
  using Error::Error;
};

// Structurally invalid request: mismatched rings, wrong dimensions,
// out-of-range parameters, unknown catalog names, preconditions not met.
struct InputError : Error {
  using Error::Error;
};

// A configured resource budget was exhausted (S-pair count, chart count).
// Distinct from a mathematical failure: raising the budget may succeed.
struct LimitError : Error {
  using Error::Error;
};

// Two independent computations of the same quantity disagreed.
struct ConsistencyError : Error {
  using Error::Error;
};

}  // namespace tgr
