#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "rho/arith.hpp"

namespace rho {

enum class BackendMode {
  ExactClassical,    // answers computed by exact classical arithmetic
  CircuitSimulation  // answers sampled from a simulated period-finding circuit
};

// A purely periodic sequence s: s(0) = anchor, s(i+1) = step(s(i)), with the
// anchor guaranteed to lie on its cycle. When the sequence is i -> base^i the
// caller may say so via power_base; backends can then use order arithmetic
// instead of stepping.
struct PeriodicSequence {
  Natural modulus;
  Natural anchor;
  std::function<Natural(const Natural&)> step;
  std::function<Natural(const Natural&)> value_at;  // optional closed form, may be empty
  std::optional<Natural> power_base;
};

// The two order/period oracles every factoring procedure is written against.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual BackendMode mode() const = 0;

  // Least r >= 1 with x^r = 1; requires gcd(x.value(), x.modulus()) = 1.
  virtual Natural order_of(const Residue& x) = 0;

  // Least period of the supplied purely periodic sequence.
  virtual Natural period_of(const PeriodicSequence& seq) = 0;
};

std::unique_ptr<Backend> make_exact_backend();

struct CircuitBackendOptions {
  std::uint64_t seed = 1;
  unsigned max_attempts = 16;
};

// Backend that answers by building the sequence's value table, running the
// period-finding circuit simulation on it, and post-verifying the sample.
// Throws CapacityError when the register width would exceed the simulator cap,
// BackendFailure when the attempt budget runs out.
std::unique_ptr<Backend> make_circuit_backend(const CircuitBackendOptions& options = {});

}  // namespace rho
