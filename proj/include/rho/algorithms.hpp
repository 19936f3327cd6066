#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rho/backend.hpp"
#include "rho/collisions.hpp"
#include "rho/sequences.hpp"

namespace rho {

struct RunDiagnostics {
  std::optional<Natural> order;               // multiplicative order used, when any
  std::optional<Natural> period;              // sequence period used, when any
  std::vector<Natural> divisors_tried;        // divisor candidates tested, in order
  std::vector<Natural> divisors_untried;      // candidates left untested after success
  std::optional<Natural> successful_divisor;
  std::optional<std::pair<Natural, Natural>> witness_pair;  // sequence indices compared
  std::string note;
};

struct FactorResult {
  std::optional<Natural> factor;  // proper factor, 1 < factor < N
  RunDiagnostics diagnostics;
};

// Tortoise-and-hare iteration of `step` from x0 with a gcd test at every
// meeting candidate; gives up (empty factor) on a trivial collision.
// N must be composite and not a prime power.
FactorResult pollard_rho_classical(const Natural& n, const PolynomialStep& step,
                                   const Natural& x0);

// Prime divisors of r that lie among the first bit_length(n) primes, ascending.
std::vector<Natural> divisors(const Natural& r, const Natural& n);

// Collision-based factoring with the order and the period supplied by a
// backend: anchor the quadratic orbit at index n, find the period of the
// anchored tail, then scan stride candidates period/d for a nontrivial gcd.
// known_order short-circuits the backend's order query when the caller
// already holds ord(alpha).
FactorResult quantum_rho(const Natural& n, const QuadraticFamily& family, const Natural& x0,
                         Backend& backend, const std::optional<Natural>& known_order = {});

// Order finding on base x: even order r with x^{r/2} != -1 yields a factor.
FactorResult shor(const Natural& x, const Natural& n, Backend& backend);

// Order finding with the divisor scan: for each small prime d | r try
// gcd(x^{r/d} - 1, n).
FactorResult extended_shor(const Natural& x, const Natural& n, Backend& backend);

// The collision procedure specialized to the power map i -> a^i: anchor 1,
// witness pair (0, period/d).
FactorResult quantum_rho_linear(const Natural& a, const Natural& n, Backend& backend);

// (x^{r/d})^{d-1} + ... + x^{r/d} + 1 (mod n), the cofactor with
// (x^{r/d} - 1) * cofactor = x^r - 1; requires d >= 1, d | r.
Natural cyclotomic_cofactor(const Natural& x, const Natural& r, const Natural& d,
                            const Natural& n);

struct FactorConfig {
  Natural trial_bound{10000};   // trial-divide by primes up to this value first
  unsigned attempts = 16;       // attempt budget per strategy rung per composite
  std::uint64_t seed = 1;
  unsigned jobs = 1;            // attempts run in waves of this width; result is seed-deterministic
  Backend* backend = nullptr;   // defaults to a process-wide exact backend
};

struct AttemptRecord {
  std::string strategy;
  std::string params;
  bool found = false;
  Natural factor;
};

struct Factorization {
  std::vector<PrimePower> factors;    // prime powers, ascending by base
  std::vector<Natural> unfactored;    // composite cofactors left when the budget ran out
  std::vector<AttemptRecord> attempts;

  bool complete() const { return unfactored.empty(); }
};

// Full pipeline: trial division, primality and prime-power recognition, then a
// ladder of classical rho, the linear collision procedure, and the quadratic
// collision procedure on each remaining composite.
Factorization factor(const Natural& n, const FactorConfig& config = {});

}  // namespace rho
