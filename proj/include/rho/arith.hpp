#pragma once

#include <optional>
#include <vector>

#include "rho/errors.hpp"
#include "rho/natural.hpp"

namespace rho {

// A value reduced into [0, modulus). The constructor reduces; modulus >= 2.
class Residue {
 public:
  Residue(Natural value, Natural modulus);

  const Natural& value() const { return value_; }
  const Natural& modulus() const { return modulus_; }

  friend bool operator==(const Residue&, const Residue&) = default;

 private:
  Natural value_;
  Natural modulus_;
};

// gcd(0, 0) and lcm with a zero argument are rejected.
Natural gcd(const Natural& a, const Natural& b);
Natural lcm(const Natural& a, const Natural& b);

Natural mod_pow(const Natural& base, const Natural& exp, const Natural& modulus);
Residue mod_pow(const Residue& base, const Natural& exp);

// Throws NotInvertible (carrying gcd(a, modulus)) when no inverse exists.
Natural mod_inv(const Natural& a, const Natural& modulus);
Residue mod_inv(const Residue& a);

// Deterministic for all inputs below ~3.3e24 (fixed witness set); beyond that
// the extra rounds are Miller-Rabin with deterministically derived bases, so
// results are still reproducible run to run.
bool is_probable_prime(const Natural& n, unsigned rounds = 24);

struct PrimePower {
  Natural base;
  unsigned exponent = 1;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Exact recognition of n = p^k with p prime, k >= 1; n >= 2.
std::optional<PrimePower> as_prime_power(const Natural& n);

// The first n primes, ascending; n >= 1.
std::vector<Natural> first_primes(std::size_t n);

// Complete factorization by trial division up to `bound`. A remaining cofactor
// is accepted if it is prime; otherwise CapacityError.
std::vector<PrimePower> trial_factor(const Natural& n, const Natural& bound = Natural(1000000));

enum class OrderStrategy {
  Scan,             // serial successive powers
  ScanParallel,     // block-parallel successive powers, same result
  FactoredExponent  // reduce the group exponent by its prime factors
};

// Least r >= 1 with x^r = 1 (mod modulus); requires gcd(x, modulus) = 1.
Natural multiplicative_order(const Natural& x, const Natural& modulus,
                             OrderStrategy strategy = OrderStrategy::Scan);
Natural multiplicative_order(const Residue& x, OrderStrategy strategy = OrderStrategy::Scan);

}  // namespace rho
