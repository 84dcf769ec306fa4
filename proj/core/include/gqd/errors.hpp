#pragma once

#include <stdexcept>
#include <string>

namespace gqd {

// Thrown when a numerical guarantee breaks at runtime: an eigensolver fails
// to converge, a computed state stops being a valid density matrix, or a
// post-selection probability vanishes. Caller-supplied parameters out of
// range raise std::invalid_argument instead.
class invariant_violation : public std::runtime_error {
 public:
  explicit invariant_violation(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace gqd
