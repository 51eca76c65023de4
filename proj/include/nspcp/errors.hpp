#pragma once

#include <stdexcept>
#include <string>

namespace nspcp {

// Malformed or out-of-contract arguments: dimension mismatches, bad circuits,
// query sets larger than a strategy's locality.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exhaustive computation would exceed its enumeration budget. The message
// names the bound that was hit.
class ScopeExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Something that cannot happen for well-formed inputs did (e.g. an exact-mode
// Sherali-Adams program reported infeasible).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace nspcp
