#pragma once

#include <stdexcept>

namespace stickbound {

// An internal certificate check failed: a claim the construction relies on
// (empty triangle, embeddedness, invariant identity) did not hold.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stickbound
