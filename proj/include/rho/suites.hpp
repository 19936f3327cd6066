#pragma once

#include <cstdint>
#include <string>

#include "rho/natural.hpp"

namespace rho {

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::uint64_t instances = 0;     // property checks performed
  std::string counterexample;      // first failing instance, when any
  double seconds = 0.0;
};

// Closed-form evaluation agrees with direct iteration: random quadratic
// families with modulus < modulus_bound, iterates 0..max_iter.
SuiteResult closed_form_suite(unsigned modulus_bound = 10000, unsigned family_count = 200,
                              unsigned max_iter = 200, std::uint64_t seed = 1);

// Tortoise-and-hare meeting index: for every modulus < modulus_bound, offset
// c <= max_offset and start x0, the meeting index is the least multiple of
// lambda that is >= max(mu, 1), and x_i = x_{2i} holds.
SuiteResult floyd_suite(unsigned modulus_bound = 2000, unsigned max_offset = 10);

// Cycle length mod p*q is lcm of the reduced cycle lengths, for all pairs of
// distinct primes below prime_bound, offsets c <= max_offset, all starts.
SuiteResult lcm_lemma_suite(unsigned prime_bound = 100, unsigned max_offset = 20);

// The collision characterization: unequal reduced cycle lengths iff the
// constructed stride exists, in which case every in-cycle pair at that stride
// is a nontrivial collision; equal lengths admit no nontrivial in-cycle pair.
SuiteResult theorem_main_suite(unsigned prime_bound = 50, unsigned max_offset = 10);

// The linear collision procedure and the divisor-scan order procedure agree
// (same factor, same successful divisor) on every semiprime < modulus_bound
// and every coprime base a < base_bound.
SuiteResult reduction_suite(unsigned modulus_bound = 5000, unsigned base_bound = 50);

}  // namespace rho
