#pragma once

#include <stdexcept>
#include <string>

namespace vipclass {

/// Input that does not describe a valid object (malformed group data, a
/// vector violating the generating conditions, a non-free action, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested computation lies outside what the library handles (g' > 0 in the
/// enumerator, automorphism ceiling exceeded, ...).
class ScopeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// An internal identity failed. Always a bug or a corrupted datum.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool condition, const std::string& what) {
  if (!condition) throw ConsistencyError(what);
}

}  // namespace vipclass
