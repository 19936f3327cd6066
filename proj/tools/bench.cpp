#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rho/algorithms.hpp"
#include "rho/quantum_sim.hpp"
#include "rho/suites.hpp"

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

rho::RegisterState pre_qft_state(const rho::CircuitConfig& cfg) {
  auto s = rho::prepare_initial(cfg);
  s = rho::hadamard_layer(s, cfg);
  s = rho::adder_shift(s, cfg, rho::ShiftDirection::Forward);
  s = rho::apply_u(s, cfg);
  return rho::adder_shift(s, cfg, rho::ShiftDirection::Reverse);
}

void bench_distribution() {
  const rho::Natural n = 209;
  const rho::QuadraticFamily family(1, 2, n);
  const rho::Natural x0 = 2;
  const rho::Natural alpha = (2 * family.a() * x0 + family.b()) % n * rho::mod_inv(2, n) % n;
  const rho::Natural order = rho::multiplicative_order(alpha, n);
  const rho::ClosedFormContext ctx(family, x0, order);

  const std::size_t ell = rho::bit_length(n * n);
  const std::uint64_t span = std::uint64_t{1} << ell;
  auto table = std::make_shared<std::vector<std::uint64_t>>();
  table->reserve(span);
  rho::Natural v = rho::closed_form_g(ctx, n);
  for (std::uint64_t i = 0; i < span; ++i) {
    table->push_back(rho::to_u64(v));
    v = rho::iterate_quadratic(family, v);
  }
  const rho::CircuitConfig cfg =
      rho::make_circuit_config(n, [table](std::uint64_t i) { return (*table)[i]; }, 1);
  const rho::RegisterState state = pre_qft_state(cfg);

  double t0 = now_seconds();
  const rho::OutcomeDistribution fast = rho::inverse_qft_distribution(state, cfg);
  const double fast_s = now_seconds() - t0;

  t0 = now_seconds();
  const rho::OutcomeDistribution ref = rho::outcome_distribution_reference(state, cfg);
  const double ref_s = now_seconds() - t0;

  double max_diff = 0.0;
  for (std::size_t c = 0; c < fast.probabilities.size(); ++c)
    max_diff = std::max(max_diff, std::fabs(fast.probabilities[c] - ref.probabilities[c]));

  std::printf("transform distribution, n=209, ell=%zu (%llu outcomes)\n", ell,
              static_cast<unsigned long long>(span));
  std::printf("  run-grouped kernel : %8.3f s\n", fast_s);
  std::printf("  direct reference   : %8.3f s\n", ref_s);
  std::printf("  speedup            : %8.2fx\n", ref_s / fast_s);
  std::printf("  max |diff|         : %.3e\n\n", max_diff);
}

void bench_order_scan() {
  const rho::Natural base = 4;
  const rho::Natural mod = 62615533;

  double t0 = now_seconds();
  const rho::Natural serial =
      rho::multiplicative_order(base, mod, rho::OrderStrategy::Scan);
  const double serial_s = now_seconds() - t0;

  t0 = now_seconds();
  const rho::Natural parallel =
      rho::multiplicative_order(base, mod, rho::OrderStrategy::ScanParallel);
  const double parallel_s = now_seconds() - t0;

  std::printf("multiplicative order of 4 mod 62615533 (= %s)\n", serial.get_str().c_str());
  std::printf("  serial scan        : %8.3f s\n", serial_s);
  std::printf("  parallel scan      : %8.3f s\n", parallel_s);
  std::printf("  speedup            : %8.2fx\n", serial_s / parallel_s);
  std::printf("  agree              : %s\n\n", serial == parallel ? "yes" : "NO");
}

void bench_floyd_sweep() {
#ifdef _OPENMP
  const int max_threads = omp_get_max_threads();
  omp_set_num_threads(1);
  double t0 = now_seconds();
  const rho::SuiteResult one = rho::floyd_suite(1200, 6);
  const double one_s = now_seconds() - t0;

  omp_set_num_threads(max_threads);
  t0 = now_seconds();
  const rho::SuiteResult many = rho::floyd_suite(1200, 6);
  const double many_s = now_seconds() - t0;

  std::printf("meeting-point sweep, %llu instances\n",
              static_cast<unsigned long long>(one.instances));
  std::printf("  1 thread           : %8.3f s\n", one_s);
  std::printf("  %d thread(s)        : %8.3f s\n", max_threads, many_s);
  std::printf("  speedup            : %8.2fx\n", one_s / many_s);
  std::printf("  both pass          : %s\n", one.passed && many.passed ? "yes" : "NO");
#else
  const rho::SuiteResult one = rho::floyd_suite(1200, 6);
  std::printf("meeting-point sweep (built without OpenMP), pass=%s\n",
              one.passed ? "yes" : "no");
#endif
}

}  // namespace

int main() {
  bench_distribution();
  bench_order_scan();
  bench_floyd_sweep();
  return 0;
}
