#include "rho/quantum_sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rho/arith.hpp"

namespace rho {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void sort_entries(RegisterState& s) {
  std::sort(s.entries.begin(), s.entries.end(), [](const StateEntry& a, const StateEntry& b) {
    if (a.r1 != b.r1) return a.r1 < b.r1;
    if (a.r2 != b.r2) return a.r2 < b.r2;
    return a.r3 < b.r3;
  });
}

}  // namespace

double RegisterState::norm() const {
  double s = 0.0;
  for (const auto& e : entries) s += std::norm(e.amp);
  return std::sqrt(s);
}

CircuitConfig make_circuit_config(const Natural& modulus,
                                  std::function<std::uint64_t(std::uint64_t)> oracle,
                                  std::uint64_t seed) {
  if (modulus < 2) throw std::invalid_argument("modulus must be >= 2");
  if (!oracle) throw std::invalid_argument("oracle must be callable");
  const std::size_t ell = bit_length(modulus * modulus);
  if (ell > kMaxEllBits)
    throw CapacityError("register width " + std::to_string(ell) + " exceeds the simulator cap of " +
                        std::to_string(kMaxEllBits));
  CircuitConfig cfg;
  cfg.modulus = modulus;
  cfg.n_bits = static_cast<unsigned>(bit_length(modulus));
  cfg.ell_bits = static_cast<unsigned>(ell);
  cfg.oracle = std::move(oracle);
  cfg.seed = seed;
  return cfg;
}

RegisterState prepare_initial(const CircuitConfig& config) {
  RegisterState s;
  s.entries.push_back({to_u64(config.modulus), 0, 0, {1.0, 0.0}});
  return s;
}

RegisterState hadamard_layer(const RegisterState& state, const CircuitConfig& config) {
  const std::uint64_t span = std::uint64_t{1} << config.ell_bits;
  for (const auto& e : state.entries)
    if (e.r2 != 0)
      throw std::invalid_argument("work register must be |0> before the superposition layer");
  RegisterState out;
  out.entries.reserve(state.entries.size() * span);
  const double scale = 1.0 / std::sqrt(static_cast<double>(span));
  for (const auto& e : state.entries)
    for (std::uint64_t i = 0; i < span; ++i)
      out.entries.push_back({e.r1, i, e.r3, e.amp * scale});
  sort_entries(out);
  return out;
}

RegisterState adder_shift(const RegisterState& state, const CircuitConfig& config,
                          ShiftDirection direction) {
  const std::uint64_t span = std::uint64_t{1} << config.ell_bits;
  const std::uint64_t n = to_u64(config.modulus) % span;
  const std::uint64_t delta = direction == ShiftDirection::Forward ? n : span - n;
  RegisterState out = state;
  for (auto& e : out.entries) e.r2 = (e.r2 + delta) & (span - 1);
  sort_entries(out);
  return out;
}

RegisterState apply_u(const RegisterState& state, const CircuitConfig& config) {
  const std::uint64_t span = std::uint64_t{1} << config.ell_bits;
  const std::uint64_t n = to_u64(config.modulus) % span;
  RegisterState out = state;
  for (auto& e : out.entries) {
    if (e.r3 != 0)
      throw std::invalid_argument("value register must be |0> before the oracle query");
    if (e.r2 >= span) throw std::invalid_argument("work register out of range");
    e.r3 = config.oracle((e.r2 + span - n) & (span - 1));
  }
  sort_entries(out);
  return out;
}

double OutcomeDistribution::total() const {
  double s = 0.0;
  for (double p : probabilities) s += p;
  return s;
}

namespace {

struct Run {
  std::uint64_t start = 0;
  bool tall = false;  // count is ceil(span/period) rather than floor
  std::uint32_t class_index = 0;
};

// Arithmetic-progression decomposition of the oracle table, one progression
// per in-period offset, grouped into classes by table value.
struct TableDecomposition {
  std::uint64_t period = 1;
  std::uint64_t count_lo = 0;   // floor(span / period)
  std::uint64_t count_hi = 0;   // elements of runs that start before span % period
  std::vector<std::uint64_t> class_values;
  std::vector<Run> runs;
};

std::uint64_t least_window_period(const std::vector<std::uint64_t>& table) {
  // failure function of the table read as a string
  const std::size_t n = table.size();
  std::vector<std::uint32_t> fail(n + 1, 0);
  std::uint32_t k = 0;
  for (std::size_t i = 1; i < n; ++i) {
    while (k > 0 && table[i] != table[k]) k = fail[k];
    if (table[i] == table[k]) ++k;
    fail[i + 1] = k;
  }
  return n - fail[n];
}

TableDecomposition decompose_table(const std::vector<std::uint64_t>& table) {
  TableDecomposition d;
  d.period = least_window_period(table);
  const std::uint64_t span = table.size();
  d.count_lo = span / d.period;
  d.count_hi = d.count_lo + (span % d.period == 0 ? 0 : 1);
  std::map<std::uint64_t, std::uint32_t> class_of;
  for (std::uint64_t i = 0; i < d.period; ++i) {
    auto [it, fresh] =
        class_of.emplace(table[i], static_cast<std::uint32_t>(d.class_values.size()));
    if (fresh) d.class_values.push_back(table[i]);
    d.runs.push_back({i, i < span % d.period, it->second});
  }
  return d;
}

// cos/sin of pi * k / span for integer k in [0, 2*span); all circuit phases
// reduce to this grid exactly, so there is no accumulated drift.
class PhaseGrid {
 public:
  PhaseGrid(std::uint64_t span) : span_(span), mask_(2 * span - 1) {
    if (2 * span <= kTableCap) {
      cos_.resize(2 * span);
      sin_.resize(2 * span);
      const double step = std::numbers::pi / static_cast<double>(span);
      for (std::uint64_t k = 0; k < 2 * span; ++k) {
        cos_[k] = std::cos(step * static_cast<double>(k));
        sin_[k] = std::sin(step * static_cast<double>(k));
      }
    }
  }

  // e^{i pi k / span}; k need not be pre-reduced
  std::complex<double> at(std::uint64_t k) const {
    k &= mask_;
    if (!cos_.empty()) return {cos_[k], sin_[k]};
    const double a = std::numbers::pi / static_cast<double>(span_) * static_cast<double>(k);
    return {std::cos(a), std::sin(a)};
  }

  double sin_at(std::uint64_t k) const {
    k &= mask_;
    if (!sin_.empty()) return sin_[k];
    return std::sin(std::numbers::pi / static_cast<double>(span_) * static_cast<double>(k));
  }

 private:
  static constexpr std::uint64_t kTableCap = 1u << 22;
  std::uint64_t span_;
  std::uint64_t mask_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

// Geometric progression sum G = sum_{m < count} e^{2 pi i (period c / span) m},
// by the exact closed form on the phase grid.
std::complex<double> geometric_sum(std::uint64_t reduced, std::uint64_t count,
                                   const PhaseGrid& grid) {
  if (reduced == 0) return {static_cast<double>(count), 0.0};
  const double mag = grid.sin_at(count * reduced) / grid.sin_at(reduced);
  return mag * grid.at((count - 1) * reduced);
}

// Per-class transform amplitudes at outcome c (already scaled by 1/span);
// emit(class_index, amplitude) is called once per class.
template <typename Emit>
void scan_outcome(const TableDecomposition& d, std::uint64_t span, const PhaseGrid& grid,
                  std::uint64_t c, std::vector<std::complex<double>>& scratch, Emit&& emit) {
  const std::uint64_t reduced = (d.period * c) & (span - 1);
  const std::complex<double> g_lo = geometric_sum(reduced, d.count_lo, grid);
  const std::complex<double> g_hi =
      d.count_hi == d.count_lo ? g_lo : geometric_sum(reduced, d.count_hi, grid);
  scratch.assign(d.class_values.size(), {0.0, 0.0});
  for (const Run& run : d.runs)
    scratch[run.class_index] += grid.at(2 * run.start * c) * (run.tall ? g_hi : g_lo);
  const double scale = 1.0 / static_cast<double>(span);
  for (std::size_t k = 0; k < scratch.size(); ++k) emit(k, scratch[k] * scale);
}

// The fast path applies when the state is exactly the oracle superposition:
// one entry per work-register index, constant first register, value register
// a function of the index, uniform real amplitudes.
std::optional<std::vector<std::uint64_t>> uniform_oracle_table(const RegisterState& state,
                                                               std::uint64_t span) {
  if (state.entries.size() != span) return std::nullopt;
  const double u = 1.0 / std::sqrt(static_cast<double>(span));
  const double tol = u * 1e-12;
  std::vector<std::uint64_t> table(span);
  const std::uint64_t r1 = state.entries.front().r1;
  for (std::uint64_t k = 0; k < span; ++k) {
    const StateEntry& e = state.entries[k];
    if (e.r1 != r1 || e.r2 != k) return std::nullopt;
    if (std::abs(e.amp.real() - u) > tol || e.amp.imag() != 0.0) return std::nullopt;
    table[k] = e.r3;
  }
  return table;
}

}  // namespace

OutcomeDistribution outcome_distribution_reference(const RegisterState& state,
                                                   const CircuitConfig& config) {
  const std::uint64_t span = std::uint64_t{1} << config.ell_bits;
  OutcomeDistribution dist;
  dist.ell_bits = config.ell_bits;
  dist.probabilities.assign(span, 0.0);
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<const StateEntry*>> classes;
  for (const auto& e : state.entries) {
    if (e.r2 >= span) throw std::invalid_argument("work register out of range");
    classes[{e.r1, e.r3}].push_back(&e);
  }
  const double scale = 1.0 / static_cast<double>(span);
  for (const auto& [key, members] : classes) {
    for (std::uint64_t c = 0; c < span; ++c) {
      std::complex<double> acc{0.0, 0.0};
      for (const StateEntry* e : members) {
        const std::uint64_t k = (e->r2 * c) & (span - 1);
        acc += e->amp * std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(span));
      }
      dist.probabilities[c] += std::norm(acc) * scale;
    }
  }
  return dist;
}

OutcomeDistribution inverse_qft_distribution(const RegisterState& state,
                                             const CircuitConfig& config) {
  const std::uint64_t span = std::uint64_t{1} << config.ell_bits;
  auto table = uniform_oracle_table(state, span);
  if (!table) return outcome_distribution_reference(state, config);

  const TableDecomposition d = decompose_table(*table);
  const PhaseGrid grid(span);
  OutcomeDistribution dist;
  dist.ell_bits = config.ell_bits;
  dist.probabilities.assign(span, 0.0);
  const std::int64_t last = static_cast<std::int64_t>(span) - 1;
#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    std::vector<std::complex<double>> scratch;
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (std::int64_t c = 0; c <= last; ++c) {
      double total = 0.0;
      scan_outcome(d, span, grid, static_cast<std::uint64_t>(c), scratch,
                   [&](std::size_t, std::complex<double> amp) { total += std::norm(amp); });
      dist.probabilities[static_cast<std::uint64_t>(c)] = total;
    }
  }
  return dist;
}

RegisterState apply_inverse_qft(const RegisterState& state, const CircuitConfig& config,
                                double prune) {
  const std::uint64_t span = std::uint64_t{1} << config.ell_bits;
  RegisterState out;
  auto table = uniform_oracle_table(state, span);
  if (table) {
    const TableDecomposition d = decompose_table(*table);
    const PhaseGrid grid(span);
    const std::uint64_t r1 = state.entries.front().r1;
    std::vector<std::complex<double>> scratch;
    for (std::uint64_t c = 0; c < span; ++c) {
      scan_outcome(d, span, grid, c, scratch, [&](std::size_t k, std::complex<double> amp) {
        if (std::abs(amp) >= prune) out.entries.push_back({r1, c, d.class_values[k], amp});
      });
    }
    sort_entries(out);
    return out;
  }

  // generic path: direct transform of whatever state was supplied
  std::map<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>, std::complex<double>> acc;
  const double scale = 1.0 / std::sqrt(static_cast<double>(span));
  for (const auto& e : state.entries) {
    if (e.r2 >= span) throw std::invalid_argument("work register out of range");
    for (std::uint64_t c = 0; c < span; ++c) {
      const std::uint64_t k = (e.r2 * c) & (span - 1);
      acc[{e.r1, c, e.r3}] +=
          e.amp * scale * std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(span));
    }
  }
  for (const auto& [key, amp] : acc)
    if (std::abs(amp) >= prune)
      out.entries.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), amp});
  sort_entries(out);
  return out;
}

std::uint64_t sample(const OutcomeDistribution& dist, std::mt19937_64& rng) {
  if (dist.probabilities.empty()) throw std::invalid_argument("empty distribution");
  // top 53 bits -> u in [0, 1); CDF walk is identical on every platform
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  double acc = 0.0;
  std::uint64_t last_positive = 0;
  bool seen = false;
  for (std::uint64_t c = 0; c < dist.probabilities.size(); ++c) {
    const double p = dist.probabilities[c];
    if (p <= 0.0) continue;
    last_positive = c;
    seen = true;
    acc += p;
    if (u < acc) return c;
  }
  if (!seen) throw std::invalid_argument("distribution has no mass");
  return last_positive;
}

std::uint64_t sample(const OutcomeDistribution& dist, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample(dist, rng);
}

std::optional<Natural> extract_period(std::uint64_t c, unsigned ell_bits, const Natural& n) {
  if (ell_bits < 1 || ell_bits > 63) throw std::invalid_argument("register width out of range");
  if (c >> ell_bits != 0) throw std::invalid_argument("outcome exceeds the register width");
  if (n < 1) throw std::invalid_argument("period bound must be >= 1");
  if (c == 0) return std::nullopt;
  const Natural big_l = Natural(1) << ell_bits;
  const Natural target(static_cast<unsigned long>(c));
  // continued-fraction convergents p/q of c / 2^ell, ascending q
  Natural num = target;
  Natural den = big_l;
  Natural p_prev = 0, p_cur = 1;  // h_{-2} = 0, h_{-1} = 1
  Natural q_prev = 1, q_cur = 0;  // k_{-2} = 1, k_{-1} = 0
  while (den != 0) {
    const Natural a = num / den;
    const Natural rem = num % den;
    const Natural p = a * p_cur + p_prev;
    const Natural q = a * q_cur + q_prev;
    if (q > n) break;
    if (q >= 1) {
      Natural err = target * q - p * big_l;
      if (err < 0) err = -err;
      if (err <= q) return q;
    }
    p_prev = p_cur;
    p_cur = p;
    q_prev = q_cur;
    q_cur = q;
    num = den;
    den = rem;
  }
  return std::nullopt;
}

namespace {

// probe offsets make a bogus period candidate vanishingly unlikely to verify
constexpr unsigned kVerifyProbes = 24;

bool verified_period(const CircuitConfig& cfg, std::uint64_t span, std::uint64_t s,
                     std::uint64_t anchor_value) {
  if (s == 0 || s >= span) return false;
  if (cfg.oracle(s) != anchor_value) return false;
  std::uint64_t stream = 0x51a2b3c4d5e6f708ULL;
  for (unsigned j = 0; j < kVerifyProbes; ++j) {
    stream = splitmix64(stream);
    const std::uint64_t k = stream % (span - s);
    if (cfg.oracle(s + k) != cfg.oracle(k)) return false;
  }
  return true;
}

std::uint64_t least_verified_period(const CircuitConfig& cfg, std::uint64_t span,
                                    std::uint64_t s, std::uint64_t anchor_value) {
  for (const auto& pp : trial_factor(Natural(static_cast<unsigned long>(s)))) {
    const std::uint64_t p = to_u64(pp.base);
    while (s % p == 0 && verified_period(cfg, span, s / p, anchor_value)) s /= p;
  }
  return s;
}

}  // namespace

Natural run_period_finding(const CircuitConfig& config, unsigned max_attempts) {
  if (max_attempts < 1) throw std::invalid_argument("need at least one attempt");
  const std::uint64_t span = std::uint64_t{1} << config.ell_bits;
  const std::uint64_t anchor_value = config.oracle(0);

  bool constant = true;
  for (std::uint64_t i = 1; i < span; ++i) {
    if (config.oracle(i) != anchor_value) {
      constant = false;
      break;
    }
  }
  if (constant) return 1;

  RegisterState psi = prepare_initial(config);
  psi = hadamard_layer(psi, config);
  psi = adder_shift(psi, config, ShiftDirection::Forward);
  psi = apply_u(psi, config);
  psi = adder_shift(psi, config, ShiftDirection::Reverse);
  const OutcomeDistribution dist = inverse_qft_distribution(psi, config);

  std::mt19937_64 rng(config.seed);
  const std::uint64_t bound = to_u64(config.modulus);
  Natural combined = 1;
  for (unsigned attempt = 0; attempt < max_attempts; ++attempt) {
    const std::uint64_t c = sample(dist, rng);
    const auto q = extract_period(c, config.ell_bits, config.modulus);
    if (!q) continue;
    combined = lcm(combined, *q);
    if (combined > config.modulus) combined = *q;
    // the true period divides some multiple of the candidate within range
    for (std::uint64_t s = to_u64(combined); s <= bound; s += to_u64(combined)) {
      if (verified_period(config, span, s, anchor_value))
        return Natural(static_cast<unsigned long>(
            least_verified_period(config, span, s, anchor_value)));
    }
  }
  throw BackendFailure("no period confirmed after " + std::to_string(max_attempts) +
                       " samples; rerun with another seed or a larger budget");
}

}  // namespace rho
