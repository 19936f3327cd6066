#include "rho/backend.hpp"

#include <stdexcept>

#include "rho/quantum_sim.hpp"

namespace rho {

namespace {

class ExactClassicalBackend final : public Backend {
 public:
  BackendMode mode() const override { return BackendMode::ExactClassical; }

  Natural order_of(const Residue& x) override { return multiplicative_order(x); }

  Natural period_of(const PeriodicSequence& seq) override {
    if (seq.modulus < 2) throw std::invalid_argument("modulus must be >= 2");
    if (seq.power_base) return multiplicative_order(*seq.power_base, seq.modulus);
    if (!seq.step) throw std::invalid_argument("sequence needs a step function");
    Natural x = seq.step(seq.anchor);
    Natural r = 1;
    while (x != seq.anchor) {
      x = seq.step(x);
      ++r;
    }
    return r;
  }
};

class CircuitBackend final : public Backend {
 public:
  explicit CircuitBackend(const CircuitBackendOptions& options) : opts_(options) {}

  BackendMode mode() const override { return BackendMode::CircuitSimulation; }

  Natural order_of(const Residue& x) override {
    Natural g = gcd(x.value() == 0 ? x.modulus() : x.value(), x.modulus());
    if (g != 1)
      throw std::invalid_argument("multiplicative order requires a unit; gcd is " + g.get_str());
    PeriodicSequence seq;
    seq.modulus = x.modulus();
    seq.anchor = 1;
    seq.step = [x](const Natural& v) { return v * x.value() % x.modulus(); };
    seq.power_base = x.value();
    return period_of(seq);
  }

  Natural period_of(const PeriodicSequence& seq) override {
    const Natural& n = seq.modulus;
    if (n < 2) throw std::invalid_argument("modulus must be >= 2");
    if (bit_length(n * n) > kMaxEllBits)
      throw CapacityError("register width " + std::to_string(bit_length(n * n)) +
                          " exceeds the simulator cap of " + std::to_string(kMaxEllBits) +
                          "; use the exact backend");
    const unsigned ell = static_cast<unsigned>(bit_length(n * n));
    const std::uint64_t span = std::uint64_t{1} << ell;
    auto table = std::make_shared<std::vector<std::uint64_t>>();
    table->reserve(span);
    if (seq.power_base) {
      const std::uint64_t b = to_u64(*seq.power_base % n);
      const std::uint64_t m = to_u64(n);
      std::uint64_t v = 1 % m;
      for (std::uint64_t i = 0; i < span; ++i) {
        table->push_back(v);
        v = mulmod_u64(v, b, m);
      }
    } else {
      if (!seq.step) throw std::invalid_argument("sequence needs a step function");
      Natural v = seq.anchor % n;
      for (std::uint64_t i = 0; i < span; ++i) {
        table->push_back(to_u64(v));
        v = seq.step(v);
      }
    }
    counter_ = splitmix64(counter_ + 0x632be59bd9b4e019ULL);
    CircuitConfig cfg = make_circuit_config(
        n, [table](std::uint64_t i) { return (*table)[i]; }, opts_.seed ^ counter_);
    return run_period_finding(cfg, opts_.max_attempts);
  }

 private:
  CircuitBackendOptions opts_;
  std::uint64_t counter_ = 0;
};

}  // namespace

std::unique_ptr<Backend> make_exact_backend() { return std::make_unique<ExactClassicalBackend>(); }

std::unique_ptr<Backend> make_circuit_backend(const CircuitBackendOptions& options) {
  return std::make_unique<CircuitBackend>(options);
}

}  // namespace rho
