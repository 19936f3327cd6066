#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "rho/natural.hpp"

namespace rho {

// Modular inversion failed. The offending gcd is carried along because a
// nontrivial gcd with the modulus is exactly what the factoring procedures
// are hunting for.
class NotInvertible : public std::invalid_argument {
 public:
  NotInvertible(Natural shared_factor, const Natural& modulus)
      : std::invalid_argument("value not invertible mod " + modulus.get_str() +
                              " (shared factor " + shared_factor.get_str() + ")"),
        shared_factor_(std::move(shared_factor)) {}

  const Natural& shared_factor() const { return shared_factor_; }

 private:
  Natural shared_factor_;
};

// An input exceeds a configured desk-scale bound (trial-division bound,
// simulator register width). Permanent for the given input: retrying does not help.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A probabilistic backend exhausted its attempt budget. Retryable: another
// seed or a larger budget may succeed.
class BackendFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rho
