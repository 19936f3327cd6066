#pragma once

#include <optional>
#include <vector>

#include "rho/sequences.hpp"

namespace rho {

enum class CollisionKind {
  NotCollision,  // gcd(n_i - n_j, N) = 1
  Trivial,       // gcd = N, i.e. n_i = n_j
  Nontrivial     // 1 < gcd < N: a proper factor
};

struct Collision {
  Natural gcd_value;
  CollisionKind kind = CollisionKind::NotCollision;
};

// Classify the pair of sequence values (n_i, n_j) mod N.
Collision classify(const Natural& n_i, const Natural& n_j, const Natural& modulus);

struct CollisionWitness {
  Natural i;
  Natural j;
  Natural gcd_value;
  CollisionKind kind = CollisionKind::NotCollision;
};

// Exponent of prime t in n; t must be prime, n >= 1.
unsigned prime_exponent(const Natural& t, const Natural& n);

struct DistinguishingPrime {
  Natural prime;
  unsigned exp_a = 0;
  unsigned exp_b = 0;

  friend bool operator==(const DistinguishingPrime&, const DistinguishingPrime&) = default;
};

// Primes whose exponents in lambda_a and lambda_b differ, ascending.
std::vector<DistinguishingPrime> distinguishing_primes(const Natural& lambda_a,
                                                       const Natural& lambda_b,
                                                       const Natural& trial_bound = Natural(1000000));

// The canonical collision stride m = lcm(lambda_a, lambda_b) / t where t is the first
// distinguishing prime with exp_a < exp_b (first overall if none). Empty when
// lambda_a = lambda_b: no stride separates the two reductions.
std::optional<Natural> construct_m(const Natural& lambda_a, const Natural& lambda_b);

struct CharacterizationReport {
  Natural lambda_a;
  Natural lambda_b;
  Natural lambda;  // cycle length mod the full modulus
  std::optional<Natural> m;
  std::optional<CollisionWitness> witness;          // first in-cycle nontrivial pair at stride m
  std::optional<Natural> cycle_counterexample;      // in-cycle value whose stride-m pair is not nontrivial
};

// Check the collision characterization for x0 under `step` mod a_part * b_part:
// lambda_a != lambda_b iff construct_m yields a stride, and then every in-cycle
// pair at that stride is a nontrivial collision.
CharacterizationReport verify_characterization(const PolynomialStep& step, const Natural& x0,
                                               const Natural& a_part, const Natural& b_part);

}  // namespace rho
