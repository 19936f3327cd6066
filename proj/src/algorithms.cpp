#include "rho/algorithms.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>

#include "rho/quantum_sim.hpp"

namespace rho {

namespace {

void require_rho_modulus(const Natural& n) {
  if (n < 2) throw std::invalid_argument("modulus must be >= 2");
  if (is_probable_prime(n)) throw std::invalid_argument("modulus must be composite");
  if (as_prime_power(n)) throw std::invalid_argument("modulus must not be a prime power");
}

}  // namespace

FactorResult pollard_rho_classical(const Natural& n, const PolynomialStep& step,
                                   const Natural& x0) {
  require_rho_modulus(n);
  FactorResult res;
  Natural tortoise = x0 % n;
  Natural hare = tortoise;
  for (Natural i = 1;; ++i) {
    tortoise = step.eval(tortoise, n);
    hare = step.eval(step.eval(hare, n), n);
    Natural diff = tortoise >= hare ? tortoise - hare : hare - tortoise;
    Natural d = diff == 0 ? n : gcd(diff, n);
    if (d == n) {
      // the full orbit met before any reduced orbit separated: give up
      res.diagnostics.note = "trivial collision at meeting index " + i.get_str();
      res.diagnostics.witness_pair = {i, 2 * i};
      return res;
    }
    if (d > 1) {
      res.factor = d;
      res.diagnostics.witness_pair = {i, 2 * i};
      return res;
    }
  }
}

std::vector<Natural> divisors(const Natural& r, const Natural& n) {
  if (r < 1) throw std::invalid_argument("period must be >= 1");
  if (n < 2) throw std::invalid_argument("modulus must be >= 2");
  std::vector<Natural> out;
  for (const Natural& p : first_primes(bit_length(n)))
    if (r % p == 0) out.push_back(p);
  return out;
}

FactorResult quantum_rho(const Natural& n, const QuadraticFamily& family, const Natural& x0,
                         Backend& backend, const std::optional<Natural>& known_order) {
  if (family.modulus() != n) throw std::invalid_argument("family modulus mismatch");
  if (is_probable_prime(n)) throw std::invalid_argument("modulus must be composite");
  FactorResult res;
  Natural start = x0 % n;
  Natural alpha = (2 * family.a() * start + family.b()) % n * mod_inv(2, n) % n;
  Natural g = gcd(alpha == 0 ? n : alpha, n);
  if (g != 1) {
    if (g < n) {
      res.factor = g;
      res.diagnostics.note = "alpha shares a factor with the modulus";
    } else {
      res.diagnostics.note = "alpha is zero mod the modulus";
    }
    return res;
  }
  const Natural r = known_order ? *known_order : backend.order_of(Residue(alpha, n));
  res.diagnostics.order = r;
  const ClosedFormContext ctx(family, start, r);
  const Natural anchor = closed_form_g(ctx, n);

  PeriodicSequence seq;
  seq.modulus = n;
  seq.anchor = anchor;
  seq.step = [family](const Natural& v) { return iterate_quadratic(family, v); };
  seq.value_at = [ctx, n](const Natural& i) { return closed_form_g(ctx, n + i); };
  const Natural period = backend.period_of(seq);
  res.diagnostics.period = period;

  const auto ds = divisors(period, n);
  for (std::size_t idx = 0; idx < ds.size(); ++idx) {
    const Natural& d = ds[idx];
    res.diagnostics.divisors_tried.push_back(d);
    const Natural j = n + period / d;
    const Collision col = classify(closed_form_g(ctx, j), anchor, n);
    if (col.kind == CollisionKind::Nontrivial) {
      res.factor = col.gcd_value;
      res.diagnostics.successful_divisor = d;
      res.diagnostics.witness_pair = {n, j};
      res.diagnostics.divisors_untried.assign(ds.begin() + idx + 1, ds.end());
      return res;
    }
  }
  return res;
}

namespace {

// shared head of the order-finding procedures
std::optional<FactorResult> order_finding_preamble(const Natural& x, const Natural& n,
                                                   Natural& base_out) {
  if (n < 2) throw std::invalid_argument("modulus must be >= 2");
  if (is_probable_prime(n)) throw std::invalid_argument("modulus must be composite");
  base_out = x % n;
  if (base_out <= 1) throw std::invalid_argument("base must satisfy 1 < x mod n");
  Natural g = gcd(base_out, n);
  if (g != 1) {
    FactorResult res;
    res.factor = g;
    res.diagnostics.note = "base shares a factor with the modulus";
    return res;
  }
  return std::nullopt;
}

}  // namespace

FactorResult shor(const Natural& x, const Natural& n, Backend& backend) {
  Natural base;
  if (auto early = order_finding_preamble(x, n, base)) return *early;
  FactorResult res;
  const Natural r = backend.order_of(Residue(base, n));
  res.diagnostics.order = r;
  if (r % 2 != 0) {
    res.diagnostics.note = "order is odd";
    return res;
  }
  res.diagnostics.divisors_tried.push_back(2);
  const Natural h = mod_pow(base, r / 2, n);
  if (h == n - 1) {
    res.diagnostics.note = "x^(r/2) is -1 mod n";
    return res;
  }
  const Natural d = gcd(h - 1, n);
  if (d > 1 && d < n) {
    res.factor = d;
    res.diagnostics.successful_divisor = 2;
  } else {
    res.diagnostics.note = "gcd at r/2 is trivial";
  }
  return res;
}

FactorResult extended_shor(const Natural& x, const Natural& n, Backend& backend) {
  Natural base;
  if (auto early = order_finding_preamble(x, n, base)) return *early;
  FactorResult res;
  const Natural r = backend.order_of(Residue(base, n));
  res.diagnostics.order = r;
  const auto ds = divisors(r, n);
  for (std::size_t idx = 0; idx < ds.size(); ++idx) {
    const Natural& d = ds[idx];
    res.diagnostics.divisors_tried.push_back(d);
    const Natural h = mod_pow(base, r / d, n);
    const Natural g = gcd(h == 0 ? n : h - 1, n);
    if (g > 1 && g < n) {
      res.factor = g;
      res.diagnostics.successful_divisor = d;
      res.diagnostics.divisors_untried.assign(ds.begin() + idx + 1, ds.end());
      return res;
    }
  }
  return res;
}

FactorResult quantum_rho_linear(const Natural& a, const Natural& n, Backend& backend) {
  require_rho_modulus(n);
  if (n % 2 == 0) throw std::invalid_argument("modulus must be odd");
  Natural base;
  if (auto early = order_finding_preamble(a, n, base)) return *early;
  FactorResult res;

  PeriodicSequence seq;
  seq.modulus = n;
  seq.anchor = 1;
  seq.step = [base, n](const Natural& v) { return v * base % n; };
  seq.value_at = [base, n](const Natural& i) { return mod_pow(base, i, n); };
  seq.power_base = base;
  const Natural period = backend.period_of(seq);
  res.diagnostics.period = period;

  const auto ds = divisors(period, n);
  for (std::size_t idx = 0; idx < ds.size(); ++idx) {
    const Natural& d = ds[idx];
    res.diagnostics.divisors_tried.push_back(d);
    const Natural j = period / d;
    const Collision col = classify(mod_pow(base, j, n), Natural(1), n);
    if (col.kind == CollisionKind::Nontrivial) {
      res.factor = col.gcd_value;
      res.diagnostics.successful_divisor = d;
      res.diagnostics.witness_pair = {Natural(0), j};
      res.diagnostics.divisors_untried.assign(ds.begin() + idx + 1, ds.end());
      return res;
    }
  }
  return res;
}

Natural cyclotomic_cofactor(const Natural& x, const Natural& r, const Natural& d,
                            const Natural& n) {
  if (n < 2) throw std::invalid_argument("modulus must be >= 2");
  if (d < 1 || r < 1 || r % d != 0)
    throw std::invalid_argument("need 1 <= d and d | r");
  const Natural y = mod_pow(x % n, r / d, n);
  Natural acc = 0;
  for (Natural k = 0; k < d; ++k) acc = (acc * y + 1) % n;
  return acc;
}

namespace {

Natural random_natural_below(std::uint64_t& stream, const Natural& bound) {
  // deterministic parameter draw from the attempt stream
  Natural acc = 0;
  const std::size_t need = bit_length(bound) + 64;
  for (std::size_t bits = 0; bits < need; bits += 64) {
    stream = splitmix64(stream);
    acc <<= 64;
    acc += Natural(static_cast<unsigned long>(stream));
  }
  return acc % bound;
}

struct AttemptOutcome {
  std::optional<Natural> factor;
  AttemptRecord rec;
};

// Waves of `jobs` independent attempts; the lowest successful attempt index
// wins, so the result does not depend on thread timing.
template <typename Fn>
std::optional<Natural> run_strategy(const std::string& name, unsigned attempts, unsigned jobs,
                                    std::vector<AttemptRecord>& log, Fn&& attempt) {
  const unsigned width_cap = std::max(jobs, 1u);
  for (unsigned base = 0; base < attempts; base += width_cap) {
    const unsigned width = std::min(width_cap, attempts - base);
    std::vector<AttemptOutcome> outs(width);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) if (width > 1)
#endif
    for (unsigned w = 0; w < width; ++w) {
      AttemptOutcome& o = outs[w];
      o.rec.strategy = name;
      try {
        o.factor = attempt(base + w, o.rec.params);
      } catch (const BackendFailure&) {
        o.rec.params += " [backend gave up]";
      }
      if (o.factor) {
        o.rec.found = true;
        o.rec.factor = *o.factor;
      }
    }
    for (unsigned w = 0; w < width; ++w) {
      log.push_back(outs[w].rec);
      if (outs[w].factor) return outs[w].factor;
    }
  }
  return std::nullopt;
}

void factor_into(const Natural& n, const FactorConfig& cfg, Backend& backend, std::uint64_t salt,
                 std::map<Natural, unsigned>& primes, std::vector<Natural>& unfactored,
                 std::vector<AttemptRecord>& log) {
  if (is_probable_prime(n)) {
    ++primes[n];
    return;
  }
  if (auto pp = as_prime_power(n)) {
    primes[pp->base] += pp->exponent;
    return;
  }

  const bool circuit = backend.mode() == BackendMode::CircuitSimulation;
  const bool circuit_fits = !circuit || bit_length(n * n) <= kMaxEllBits;
  const unsigned backend_jobs = circuit ? 1 : cfg.jobs;
  auto stream_for = [salt](unsigned rung, unsigned k) {
    return splitmix64(salt + 0x100000001b3ULL * rung + k);
  };

  std::optional<Natural> d = run_strategy(
      "rho", cfg.attempts, cfg.jobs, log, [&](unsigned k, std::string& params) {
        std::uint64_t stream = stream_for(0, k);
        Natural c = random_natural_below(stream, n - 2) + 1;
        if (c == n - 2) c = 1;  // the x^2 - 2 orbit collapses immediately
        Natural x0 = random_natural_below(stream, n);
        params = "e=2 c=" + c.get_str() + " x0=" + x0.get_str();
        return pollard_rho_classical(n, {2, c}, x0).factor;
      });

  if (!d && circuit_fits) {
    d = run_strategy("qrho-linear", cfg.attempts, backend_jobs, log,
                     [&](unsigned k, std::string& params) {
                       std::uint64_t stream = stream_for(1, k);
                       Natural a = random_natural_below(stream, n - 3) + 2;
                       params = "a=" + a.get_str();
                       return quantum_rho_linear(a, n, backend).factor;
                     });
  }
  if (!d && circuit_fits) {
    d = run_strategy("qrho", cfg.attempts, backend_jobs, log,
                     [&](unsigned k, std::string& params) {
                       std::uint64_t stream = stream_for(2, k);
                       Natural b = random_natural_below(stream, n);
                       Natural x0 = random_natural_below(stream, n);
                       params = "a=1 b=" + b.get_str() + " x0=" + x0.get_str();
                       QuadraticFamily fam(1, b, n);
                       return quantum_rho(n, fam, x0, backend).factor;
                     });
  }
  if (!d && !circuit_fits) {
    AttemptRecord rec;
    rec.strategy = "qrho-linear/qrho";
    rec.params = "skipped: modulus exceeds the simulator register cap";
    log.push_back(rec);
  }

  if (!d) {
    unfactored.push_back(n);
    return;
  }
  factor_into(*d, cfg, backend, splitmix64(salt ^ mpz_fdiv_ui(d->get_mpz_t(), 0x7fffffffULL)),
              primes, unfactored, log);
  factor_into(n / *d, cfg, backend,
              splitmix64(salt + mpz_fdiv_ui(d->get_mpz_t(), 0x3fffffffULL)), primes, unfactored,
              log);
}

}  // namespace

Factorization factor(const Natural& n, const FactorConfig& config) {
  if (n < 2) throw std::invalid_argument("factoring requires n >= 2");
  if (config.trial_bound < 2) throw std::invalid_argument("trial bound must be >= 2");
  if (!fits_u64(config.trial_bound) || config.trial_bound > 100000000)
    throw CapacityError("trial bound too large to sieve");

  std::unique_ptr<Backend> owned;
  Backend* backend = config.backend;
  if (backend == nullptr) {
    owned = make_exact_backend();
    backend = owned.get();
  }

  Factorization out;
  std::map<Natural, unsigned> primes;
  Natural rest = n;

  const std::uint64_t b1 = to_u64(config.trial_bound);
  std::vector<bool> composite(b1 + 1, false);
  for (std::uint64_t p = 2; p <= b1; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t q = p * p; q <= b1; q += p) composite[q] = true;
    while (rest % p == 0) {
      ++primes[Natural(static_cast<unsigned long>(p))];
      rest /= p;
    }
    if (rest == 1) break;
  }

  if (rest > 1)
    factor_into(rest, config, *backend, splitmix64(config.seed), primes, out.unfactored,
                out.attempts);

  out.factors.reserve(primes.size());
  for (const auto& [p, e] : primes) out.factors.push_back({p, e});
  std::sort(out.unfactored.begin(), out.unfactored.end());
  return out;
}

}  // namespace rho
