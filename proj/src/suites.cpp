#include "rho/suites.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rho/algorithms.hpp"
#include "rho/backend.hpp"
#include "rho/collisions.hpp"
#include "rho/sequences.hpp"

namespace rho {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Keeps the failing instance with the lowest ordinal so counterexamples are
// stable under parallel execution.
class FailureTracker {
 public:
  void offer(std::uint64_t ordinal, const std::string& what) {
#ifdef _OPENMP
#pragma omp critical(rho_suite_failure)
#endif
    {
      if (ordinal < best_) {
        best_ = ordinal;
        what_ = what;
      }
    }
  }

  bool failed() const { return best_ != UINT64_MAX; }
  const std::string& what() const { return what_; }

 private:
  std::uint64_t best_ = UINT64_MAX;
  std::string what_;
};

std::vector<std::uint64_t> primes_below(std::uint64_t bound) {
  std::vector<bool> composite(bound, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p < bound; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (std::uint64_t q = p * p; q < bound; q += p) composite[q] = true;
  }
  return out;
}

std::uint64_t step_u64(std::uint64_t x, std::uint64_t c, std::uint64_t n) {
  return (mulmod_u64(x, x, n) + c) % n;
}

}  // namespace

SuiteResult closed_form_suite(unsigned modulus_bound, unsigned family_count, unsigned max_iter,
                              std::uint64_t seed) {
  const auto t0 = Clock::now();
  SuiteResult res;
  res.name = "closed-form";
  if (modulus_bound < 16) throw std::invalid_argument("modulus bound too small");

  std::mt19937_64 rng(seed);
  auto draw_below = [&rng](std::uint64_t bound) { return rng() % bound; };
  std::uint64_t instances = 0;
  FailureTracker fail;

  for (unsigned fam = 0; fam < family_count && !fail.failed(); ++fam) {
    // an odd composite non-prime-power modulus
    Natural n;
    for (;;) {
      const std::uint64_t cand = (draw_below(modulus_bound - 15) + 15) | 1;
      if (cand >= modulus_bound) continue;
      n = Natural(static_cast<unsigned long>(cand));
      if (!is_probable_prime(n) && !as_prime_power(n)) break;
    }
    Natural a, b, x0, alpha;
    const Natural inv2 = mod_inv(2, n);
    for (;;) {
      a = Natural(static_cast<unsigned long>(draw_below(to_u64(n) - 1) + 1));
      if (gcd(2 * a % n, n) == 1) break;
    }
    b = Natural(static_cast<unsigned long>(draw_below(to_u64(n))));
    for (;;) {
      x0 = Natural(static_cast<unsigned long>(draw_below(to_u64(n))));
      alpha = (2 * a * x0 + b) % n * inv2 % n;
      if (alpha != 0 && gcd(alpha, n) == 1) break;
    }

    const QuadraticFamily family(a, b, n);
    const Natural order = multiplicative_order(alpha, n);
    const ClosedFormContext ctx(family, x0, order);
    Natural x = x0;
    for (unsigned i = 0; i <= max_iter; ++i) {
      const Natural direct = closed_form_g(ctx, Natural(i));
      ++instances;
      if (direct != x) {
        fail.offer((static_cast<std::uint64_t>(fam) << 32) | i,
                   "n=" + n.get_str() + " a=" + a.get_str() + " b=" + b.get_str() +
                       " x0=" + x0.get_str() + " i=" + std::to_string(i) + ": closed form " +
                       direct.get_str() + " vs iterate " + x.get_str());
        break;
      }
      x = iterate_quadratic(family, x);
    }
  }

  res.instances = instances;
  res.passed = !fail.failed();
  res.counterexample = fail.what();
  res.seconds = seconds_since(t0);
  return res;
}

SuiteResult floyd_suite(unsigned modulus_bound, unsigned max_offset) {
  const auto t0 = Clock::now();
  SuiteResult res;
  res.name = "floyd";
  if (modulus_bound < 3) throw std::invalid_argument("modulus bound too small");

  std::uint64_t instances = 0;
  FailureTracker fail;
  const std::int64_t last = static_cast<std::int64_t>(modulus_bound) - 1;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : instances)
#endif
  for (std::int64_t nn = 2; nn <= last; ++nn) {
    const std::uint64_t n64 = static_cast<std::uint64_t>(nn);
    const Natural n(static_cast<unsigned long>(n64));
    for (unsigned c = 0; c <= max_offset; ++c) {
      const PolynomialStep step{2, Integer(c)};
      for (std::uint64_t x0 = 0; x0 < n64; ++x0) {
        const Natural start(static_cast<unsigned long>(x0));
        const CycleShape shape = cycle_shape_bruteforce(step, start, n);
        const Natural i = floyd_meet(step, start, n);
        const Natural low = shape.mu == 0 ? Natural(1) : shape.mu;
        const Natural expected = (low + shape.lambda - 1) / shape.lambda * shape.lambda;
        bool ok = i == expected && fits_u64(i);
        if (ok) {
          // x_i = x_{2i}, stepped directly
          const std::uint64_t steps = to_u64(i);
          std::uint64_t xi = x0;
          for (std::uint64_t k = 0; k < steps; ++k) xi = step_u64(xi, c, n64);
          std::uint64_t x2i = xi;
          for (std::uint64_t k = 0; k < steps; ++k) x2i = step_u64(x2i, c, n64);
          ok = xi == x2i;
        }
        ++instances;
        if (!ok)
          fail.offer(((n64 * (max_offset + 1) + c) << 32) | x0,
                     "n=" + std::to_string(n64) + " c=" + std::to_string(c) +
                         " x0=" + std::to_string(x0) + ": i=" + i.get_str() +
                         " mu=" + shape.mu.get_str() + " lambda=" + shape.lambda.get_str());
      }
    }
  }

  res.instances = instances;
  res.passed = !fail.failed();
  res.counterexample = fail.what();
  res.seconds = seconds_since(t0);
  return res;
}

namespace {

struct PrimePair {
  std::uint64_t p;
  std::uint64_t q;
};

std::vector<PrimePair> prime_pairs_below(std::uint64_t bound) {
  const auto ps = primes_below(bound);
  std::vector<PrimePair> pairs;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) pairs.push_back({ps[i], ps[j]});
  return pairs;
}

}  // namespace

SuiteResult lcm_lemma_suite(unsigned prime_bound, unsigned max_offset) {
  const auto t0 = Clock::now();
  SuiteResult res;
  res.name = "lcm-lemma";
  const auto pairs = prime_pairs_below(prime_bound);
  if (pairs.empty()) throw std::invalid_argument("prime bound admits no pairs");

  std::uint64_t instances = 0;
  FailureTracker fail;
  const std::int64_t npairs = static_cast<std::int64_t>(pairs.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : instances)
#endif
  for (std::int64_t pi = 0; pi < npairs; ++pi) {
    const std::uint64_t p = pairs[pi].p;
    const std::uint64_t q = pairs[pi].q;
    const std::uint64_t n64 = p * q;
    const Natural n(static_cast<unsigned long>(n64));
    const Natural pa(static_cast<unsigned long>(p));
    const Natural pb(static_cast<unsigned long>(q));
    for (unsigned c = 0; c <= max_offset; ++c) {
      const PolynomialStep step{2, Integer(c)};
      for (std::uint64_t x0 = 0; x0 < n64; ++x0) {
        const Natural start(static_cast<unsigned long>(x0));
        const Natural lambda = cycle_shape_bruteforce(step, start, n).lambda;
        const Natural la = reduced_cycle_shape(step, start, n, pa).lambda;
        const Natural lb = reduced_cycle_shape(step, start, n, pb).lambda;
        ++instances;
        if (lambda != lcm(la, lb))
          fail.offer(((static_cast<std::uint64_t>(pi) * (max_offset + 1) + c) << 32) | x0,
                     "n=" + std::to_string(n64) + " c=" + std::to_string(c) +
                         " x0=" + std::to_string(x0) + ": lambda=" + lambda.get_str() +
                         " lambda_a=" + la.get_str() + " lambda_b=" + lb.get_str());
      }
    }
  }

  res.instances = instances;
  res.passed = !fail.failed();
  res.counterexample = fail.what();
  res.seconds = seconds_since(t0);
  return res;
}

SuiteResult theorem_main_suite(unsigned prime_bound, unsigned max_offset) {
  const auto t0 = Clock::now();
  SuiteResult res;
  res.name = "theorem-main";
  const auto pairs = prime_pairs_below(prime_bound);
  if (pairs.empty()) throw std::invalid_argument("prime bound admits no pairs");

  std::uint64_t instances = 0;
  FailureTracker fail;
  const std::int64_t npairs = static_cast<std::int64_t>(pairs.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : instances)
#endif
  for (std::int64_t pi = 0; pi < npairs; ++pi) {
    const std::uint64_t p = pairs[pi].p;
    const std::uint64_t q = pairs[pi].q;
    const std::uint64_t n64 = p * q;
    const Natural n(static_cast<unsigned long>(n64));
    const Natural pa(static_cast<unsigned long>(p));
    const Natural pb(static_cast<unsigned long>(q));
    std::vector<std::uint64_t> cycle;
    for (unsigned c = 0; c <= max_offset; ++c) {
      const PolynomialStep step{2, Integer(c)};
      for (std::uint64_t x0 = 0; x0 < n64; ++x0) {
        const std::uint64_t ordinal =
            ((static_cast<std::uint64_t>(pi) * (max_offset + 1) + c) << 32) | x0;
        auto report = [&](const std::string& detail) {
          fail.offer(ordinal, "n=" + std::to_string(n64) + " c=" + std::to_string(c) +
                                  " x0=" + std::to_string(x0) + ": " + detail);
        };
        const Natural start(static_cast<unsigned long>(x0));
        const CycleShape shape = cycle_shape_bruteforce(step, start, n);
        const Natural la = reduced_cycle_shape(step, start, n, pa).lambda;
        const Natural lb = reduced_cycle_shape(step, start, n, pb).lambda;
        const auto m = construct_m(la, lb);
        ++instances;

        // walk onto the cycle, record it
        const std::uint64_t mu = to_u64(shape.mu);
        const std::uint64_t lam = to_u64(shape.lambda);
        std::uint64_t x = x0;
        for (std::uint64_t k = 0; k < mu; ++k) x = step_u64(x, c, n64);
        cycle.assign(lam, 0);
        for (std::uint64_t k = 0; k < lam; ++k) {
          cycle[k] = x;
          x = step_u64(x, c, n64);
        }
        auto nontrivial_at = [&](std::uint64_t k, std::uint64_t stride) {
          const std::uint64_t v1 = cycle[k];
          const std::uint64_t v2 = cycle[(k + stride) % lam];
          const std::uint64_t diff = v1 >= v2 ? v1 - v2 : v2 - v1;
          if (diff == 0) return false;
          const std::uint64_t d = gcd_u64(diff, n64);
          return d > 1 && d < n64;
        };

        if (m.has_value() != (la != lb)) {
          report("construct_m presence disagrees with lambda comparison");
          continue;
        }
        if (m) {
          if (*m < 1 || *m >= shape.lambda) {
            report("m=" + m->get_str() + " outside (0, lambda)");
            continue;
          }
          const bool div_a = *m % la == 0;
          const bool div_b = *m % lb == 0;
          if (div_a == div_b) {
            report("m=" + m->get_str() + " not exclusively divisible");
            continue;
          }
          const std::uint64_t stride = to_u64(*m);
          bool all = true;
          std::uint64_t bad = 0;
          for (std::uint64_t k = 0; k < lam; ++k) {
            if (!nontrivial_at(k, stride)) {
              all = false;
              bad = k;
              break;
            }
          }
          if (!all) {
            report("in-cycle pair at k=" + std::to_string(bad) + " stride m=" + m->get_str() +
                   " is not a nontrivial collision");
            continue;
          }
          // cross-check the first pair through the classifier
          const Collision col =
              classify(Natural(static_cast<unsigned long>(cycle[0])),
                       Natural(static_cast<unsigned long>(cycle[stride % lam])), n);
          if (col.kind != CollisionKind::Nontrivial)
            report("classifier disagrees on the first stride-m pair");
        } else {
          // equal reduced cycle lengths: no stride may produce a nontrivial pair
          bool found = false;
          std::uint64_t fk = 0, fs = 0;
          for (std::uint64_t stride = 1; stride < lam && !found; ++stride)
            for (std::uint64_t k = 0; k < lam; ++k)
              if (nontrivial_at(k, stride)) {
                found = true;
                fk = k;
                fs = stride;
                break;
              }
          if (found)
            report("lambda_a = lambda_b = " + la.get_str() + " yet pair (k=" +
                   std::to_string(fk) + ", stride=" + std::to_string(fs) + ") is nontrivial");
        }
      }
    }
  }

  res.instances = instances;
  res.passed = !fail.failed();
  res.counterexample = fail.what();
  res.seconds = seconds_since(t0);
  return res;
}

SuiteResult reduction_suite(unsigned modulus_bound, unsigned base_bound) {
  const auto t0 = Clock::now();
  SuiteResult res;
  res.name = "reduction";
  if (modulus_bound < 16 || base_bound < 3)
    throw std::invalid_argument("bounds too small for the reduction sweep");

  // odd semiprimes p*q < bound with p < q
  std::vector<std::uint64_t> semiprimes;
  {
    const auto ps = primes_below(modulus_bound);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (ps[i] == 2) continue;
      for (std::size_t j = i + 1; j < ps.size(); ++j) {
        const std::uint64_t n = ps[i] * ps[j];
        if (n < modulus_bound) semiprimes.push_back(n);
      }
    }
    std::sort(semiprimes.begin(), semiprimes.end());
  }

  std::uint64_t instances = 0;
  FailureTracker fail;
  const std::int64_t count = static_cast<std::int64_t>(semiprimes.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : instances)
#endif
  for (std::int64_t si = 0; si < count; ++si) {
    const std::uint64_t n64 = semiprimes[si];
    const Natural n(static_cast<unsigned long>(n64));
    const auto backend = make_exact_backend();
    const std::uint64_t top = std::min<std::uint64_t>(base_bound, n64);
    for (std::uint64_t a = 2; a < top; ++a) {
      if (gcd_u64(a, n64) != 1) continue;
      const Natural base(static_cast<unsigned long>(a));
      const FactorResult lin = quantum_rho_linear(base, n, *backend);
      const FactorResult ord = extended_shor(base, n, *backend);
      ++instances;
      const std::uint64_t ordinal = n64 * 64 + a;
      auto report = [&](const std::string& detail) {
        fail.offer(ordinal,
                   "n=" + std::to_string(n64) + " a=" + std::to_string(a) + ": " + detail);
      };
      if (lin.diagnostics.period != ord.diagnostics.order) {
        report("period/order disagree");
        continue;
      }
      if (lin.factor.has_value() != ord.factor.has_value()) {
        report("one procedure found a factor, the other did not");
        continue;
      }
      if (lin.factor && *lin.factor != *ord.factor) {
        report("factors disagree: " + lin.factor->get_str() + " vs " + ord.factor->get_str());
        continue;
      }
      if (lin.diagnostics.successful_divisor != ord.diagnostics.successful_divisor)
        report("successful divisors disagree");
    }
  }

  res.instances = instances;
  res.passed = !fail.failed();
  res.counterexample = fail.what();
  res.seconds = seconds_since(t0);
  return res;
}

}  // namespace rho
