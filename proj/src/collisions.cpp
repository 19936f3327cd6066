#include "rho/collisions.hpp"

#include <map>
#include <stdexcept>

namespace rho {

Collision classify(const Natural& n_i, const Natural& n_j, const Natural& modulus) {
  if (modulus < 2) throw std::invalid_argument("modulus must be >= 2");
  Natural a = n_i % modulus;
  Natural b = n_j % modulus;
  Natural diff = a >= b ? a - b : b - a;
  if (diff == 0) return {modulus, CollisionKind::Trivial};
  Natural g = gcd(diff, modulus);
  if (g == modulus) return {std::move(g), CollisionKind::Trivial};
  if (g > 1) return {std::move(g), CollisionKind::Nontrivial};
  return {std::move(g), CollisionKind::NotCollision};
}

unsigned prime_exponent(const Natural& t, const Natural& n) {
  if (n < 1) throw std::invalid_argument("prime exponent requires n >= 1");
  if (t < 2 || !is_probable_prime(t))
    throw std::invalid_argument("exponent base " + t.get_str() + " is not prime");
  unsigned e = 0;
  Natural rest = n;
  while (rest % t == 0) {
    rest /= t;
    ++e;
  }
  return e;
}

std::vector<DistinguishingPrime> distinguishing_primes(const Natural& lambda_a,
                                                       const Natural& lambda_b,
                                                       const Natural& trial_bound) {
  if (lambda_a < 1 || lambda_b < 1)
    throw std::invalid_argument("cycle lengths must be >= 1");
  std::map<Natural, std::pair<unsigned, unsigned>> exps;
  for (const auto& pp : trial_factor(lambda_a, trial_bound)) exps[pp.base].first = pp.exponent;
  for (const auto& pp : trial_factor(lambda_b, trial_bound)) exps[pp.base].second = pp.exponent;
  std::vector<DistinguishingPrime> out;
  for (const auto& [p, e] : exps)
    if (e.first != e.second) out.push_back({p, e.first, e.second});
  return out;
}

std::optional<Natural> construct_m(const Natural& lambda_a, const Natural& lambda_b) {
  if (lambda_a == lambda_b) return std::nullopt;
  const auto dps = distinguishing_primes(lambda_a, lambda_b);
  const DistinguishingPrime* pick = nullptr;
  for (const auto& dp : dps) {
    if (dp.exp_a < dp.exp_b) {
      pick = &dp;
      break;
    }
  }
  if (pick == nullptr) pick = &dps.front();
  return lcm(lambda_a, lambda_b) / pick->prime;
}

CharacterizationReport verify_characterization(const PolynomialStep& step, const Natural& x0,
                                               const Natural& a_part, const Natural& b_part) {
  if (a_part < 2 || b_part < 2) throw std::invalid_argument("both parts must be >= 2");
  if (gcd(a_part, b_part) != 1) throw std::invalid_argument("parts must be coprime");
  const Natural n = a_part * b_part;

  CharacterizationReport rep;
  rep.lambda_a = reduced_cycle_shape(step, x0, n, a_part).lambda;
  rep.lambda_b = reduced_cycle_shape(step, x0, n, b_part).lambda;
  const CycleShape shape = cycle_shape_bruteforce(step, x0, n);
  rep.lambda = shape.lambda;
  rep.m = construct_m(rep.lambda_a, rep.lambda_b);
  if (!rep.m) return rep;

  if (!fits_u64(shape.lambda))
    throw CapacityError("cycle too long to enumerate: " + shape.lambda.get_str());
  Natural x = x0 % n;
  for (Natural k = 0; k < shape.mu; ++k) x = step.eval(x, n);
  std::vector<Natural> cycle;
  cycle.reserve(to_u64(shape.lambda));
  for (Natural k = 0; k < shape.lambda; ++k) {
    cycle.push_back(x);
    x = step.eval(x, n);
  }

  const std::uint64_t lam = cycle.size();
  const std::uint64_t m = to_u64(*rep.m % shape.lambda);
  for (std::uint64_t k = 0; k < lam; ++k) {
    Collision col = classify(cycle[k], cycle[(k + m) % lam], n);
    if (col.kind == CollisionKind::Nontrivial) {
      if (!rep.witness)
        rep.witness = CollisionWitness{shape.mu + k, shape.mu + k + *rep.m,
                                       std::move(col.gcd_value), col.kind};
    } else if (!rep.cycle_counterexample) {
      rep.cycle_counterexample = cycle[k];
    }
  }
  return rep;
}

}  // namespace rho
