#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "rho/errors.hpp"
#include "rho/natural.hpp"

namespace rho {

// Hard cap on the width of the transformed register: the outcome distribution
// is materialized as a dense vector of 2^ell doubles.
inline constexpr unsigned kMaxEllBits = 24;

// Exact state-vector simulation of the order/period-finding circuit on three
// registers: |modulus>_n |work>_ell |value>_n with n = bit_length(N) and
// ell = bit_length(N^2). The oracle maps a work-register index to a sequence
// value; it must be total on [0, 2^ell).
struct CircuitConfig {
  Natural modulus;
  unsigned n_bits = 0;
  unsigned ell_bits = 0;
  std::function<std::uint64_t(std::uint64_t)> oracle;
  std::uint64_t seed = 1;
};

CircuitConfig make_circuit_config(const Natural& modulus,
                                  std::function<std::uint64_t(std::uint64_t)> oracle,
                                  std::uint64_t seed = 1);

struct StateEntry {
  std::uint64_t r1 = 0;  // constant modulus register
  std::uint64_t r2 = 0;  // work register, the one transformed and measured
  std::uint64_t r3 = 0;  // sequence-value register
  std::complex<double> amp;
};

// Sparse state vector: entries sorted by (r1, r2, r3), nonzero amplitudes only.
struct RegisterState {
  std::vector<StateEntry> entries;

  double norm() const;
};

enum class ShiftDirection { Forward, Reverse };

// |N>|0>|0>
RegisterState prepare_initial(const CircuitConfig& config);
// Uniform superposition over the work register, which must be |0>.
RegisterState hadamard_layer(const RegisterState& state, const CircuitConfig& config);
// work := work + N (Forward) or work - N (Reverse), mod 2^ell.
RegisterState adder_shift(const RegisterState& state, const CircuitConfig& config,
                          ShiftDirection direction);
// value := oracle(work - N mod 2^ell); the value register must be |0>.
RegisterState apply_u(const RegisterState& state, const CircuitConfig& config);

struct OutcomeDistribution {
  unsigned ell_bits = 0;
  std::vector<double> probabilities;  // indexed by work-register outcome, size 2^ell

  double total() const;
};

// Measurement distribution of the work register after the inverse Fourier
// transform, computed per value-register class. Uses the run-decomposition
// kernel (exact integer phase reduction, parallel over outcomes) when the
// state is a uniform oracle superposition, otherwise falls back to the direct
// per-class transform.
OutcomeDistribution inverse_qft_distribution(const RegisterState& state,
                                             const CircuitConfig& config);

// Direct per-class transform, serial. Reference implementation for the kernel
// above and the baseline of the benchmark target.
OutcomeDistribution outcome_distribution_reference(const RegisterState& state,
                                                   const CircuitConfig& config);

// The post-transform state itself, for traces; entries with |amp| below
// `prune` are dropped.
RegisterState apply_inverse_qft(const RegisterState& state, const CircuitConfig& config,
                                double prune = 1e-12);

// Inverse-CDF draw; deterministic for a given generator state.
std::uint64_t sample(const OutcomeDistribution& dist, std::mt19937_64& rng);
std::uint64_t sample(const OutcomeDistribution& dist, std::uint64_t seed);

// Recover a candidate period from outcome c: the least convergent denominator
// q <= n of c / 2^ell with |c q - p 2^ell| <= q. Empty for c = 0 or when no
// convergent qualifies.
std::optional<Natural> extract_period(std::uint64_t c, unsigned ell_bits, const Natural& n);

// Full loop: run the circuit once for the distribution, then sample, extract,
// combine candidates by lcm, and verify against the oracle until the least
// true period is confirmed. Throws BackendFailure after max_attempts samples.
Natural run_period_finding(const CircuitConfig& config, unsigned max_attempts = 16);

}  // namespace rho
