#include "rho/sequences.hpp"

#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace rho {

namespace {

void require_odd_composite_modulus(const Natural& m) {
  if (m < 3 || m % 2 == 0) throw std::invalid_argument("modulus must be odd and >= 3");
  if (as_prime_power(m)) throw std::invalid_argument("modulus must not be a prime power");
}

Natural reduce(const Integer& v, const Natural& m) {
  Natural r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

QuadraticFamily::QuadraticFamily(Natural a, Natural b, Natural modulus)
    : a_(std::move(a)), b_(std::move(b)), modulus_(std::move(modulus)) {
  require_odd_composite_modulus(modulus_);
  a_ = reduce(a_, modulus_);
  b_ = reduce(b_, modulus_);
  Natural g = gcd(a_ == 0 ? modulus_ : 2 * a_ % modulus_, modulus_);
  if (g != 1)
    throw std::invalid_argument("gcd(2a, modulus) must be 1, got " + g.get_str());
  inv2a_ = mod_inv(2 * a_, modulus_);
  constant_ = reduce(b_ * b_ - 2 * b_, modulus_) * mod_inv(4 * a_, modulus_) % modulus_;
}

LinearFamily::LinearFamily(Natural a, Natural modulus)
    : a_(std::move(a)), modulus_(std::move(modulus)) {
  if (modulus_ < 2) throw std::invalid_argument("modulus must be >= 2");
  if (a_ <= 1 || a_ >= modulus_)
    throw std::invalid_argument("base must satisfy 1 < a < modulus");
  Natural g = gcd(a_, modulus_);
  if (g != 1) throw NotInvertible(g, modulus_);
}

ClosedFormContext::ClosedFormContext(QuadraticFamily family, Natural x0, Natural order)
    : family_(std::move(family)), x0_(std::move(x0)), order_(std::move(order)) {
  const Natural& N = family_.modulus();
  x0_ = reduce(x0_, N);
  alpha_ = (2 * family_.a() * x0_ + family_.b()) % N * mod_inv(2, N) % N;
  Natural g = gcd(alpha_ == 0 ? N : alpha_, N);
  if (g != 1) throw NotInvertible(g, N);
  if (order_ < 1 || mod_pow(alpha_, order_, N) != 1)
    throw std::invalid_argument("order does not annihilate alpha");
}

Natural PolynomialStep::eval(const Natural& x, const Natural& modulus) const {
  if (modulus < 2) throw std::invalid_argument("modulus must be >= 2");
  if (exponent < 1) throw std::invalid_argument("exponent must be >= 1");
  return (mod_pow(x, exponent, modulus) + reduce(offset, modulus)) % modulus;
}

Natural iterate_quadratic(const QuadraticFamily& family, const Natural& x) {
  const Natural& N = family.modulus();
  Natural xr = x % N;
  return (family.a() * xr % N * xr + family.b() * xr + family.constant_term()) % N;
}

Natural iterate_raw_polynomial(const Natural& exponent, const Integer& offset,
                               const Natural& modulus, const Natural& x) {
  return PolynomialStep{exponent, offset}.eval(x, modulus);
}

Natural closed_form_g(const ClosedFormContext& ctx, const Natural& i) {
  const Natural& N = ctx.family().modulus();
  Natural gamma = ctx.order() == 1 ? Natural(0) : mod_pow(2, i, ctx.order());
  Natural t = 2 * mod_pow(ctx.alpha(), gamma, N) - ctx.family().b();
  return reduce(t, N) * ctx.family().inv_2a() % N;
}

Natural closed_form_linear(const LinearFamily& family, const Natural& i) {
  return mod_pow(family.a(), i, family.modulus());
}

namespace {

// machine-word mirror of PolynomialStep::eval
struct StepU64 {
  std::uint64_t exponent;
  std::uint64_t offset;
  std::uint64_t modulus;

  std::uint64_t operator()(std::uint64_t x) const {
    return (powmod_u64(x, exponent, modulus) + offset) % modulus;
  }
};

std::optional<StepU64> to_u64_step(const PolynomialStep& step, const Natural& modulus) {
  if (!fits_u64(modulus) || bit_length(modulus) > 62) return std::nullopt;
  if (!fits_u64(step.exponent)) return std::nullopt;
  Natural c;
  mpz_fdiv_r(c.get_mpz_t(), step.offset.get_mpz_t(), modulus.get_mpz_t());
  return StepU64{to_u64(step.exponent), to_u64(c), to_u64(modulus)};
}

// Orbit bookkeeping reused across calls: epoch stamps avoid clearing between
// instances, which matters for the exhaustive verification sweeps.
struct VisitScratch {
  std::vector<std::uint32_t> stamp;
  std::vector<std::uint32_t> index;
  std::uint32_t epoch = 0;
};

constexpr std::uint64_t kStampCap = 1u << 22;

CycleShape shape_u64(const StepU64& f, std::uint64_t x0) {
  std::uint64_t x = x0 % f.modulus;
  if (f.modulus <= kStampCap) {
    thread_local VisitScratch vs;
    if (vs.stamp.size() < f.modulus) {
      vs.stamp.assign(f.modulus, 0);
      vs.index.resize(f.modulus);
      vs.epoch = 0;
    }
    if (++vs.epoch == 0) {
      std::fill(vs.stamp.begin(), vs.stamp.end(), 0);
      vs.epoch = 1;
    }
    for (std::uint32_t k = 0;; ++k) {
      if (vs.stamp[x] == vs.epoch) {
        const std::uint32_t mu = vs.index[x];
        return {Natural(static_cast<unsigned long>(mu)),
                Natural(static_cast<unsigned long>(k - mu))};
      }
      vs.stamp[x] = vs.epoch;
      vs.index[x] = k;
      x = f(x);
    }
  }
  std::unordered_map<std::uint64_t, std::uint64_t> seen;
  for (std::uint64_t k = 0;; ++k) {
    auto [it, fresh] = seen.emplace(x, k);
    if (!fresh) {
      const std::uint64_t mu = it->second;
      return {Natural(static_cast<unsigned long>(mu)),
              Natural(static_cast<unsigned long>(k - mu))};
    }
    x = f(x);
  }
}

}  // namespace

CycleShape cycle_shape_bruteforce(const StepFn& step, const Natural& x0, const Natural& modulus) {
  if (modulus < 2) throw std::invalid_argument("modulus must be >= 2");
  std::map<Natural, Natural> seen;
  Natural x = x0 % modulus;
  for (Natural k = 0;; ++k) {
    auto [it, fresh] = seen.emplace(x, k);
    if (!fresh) return {it->second, k - it->second};
    x = step(x);
  }
}

CycleShape cycle_shape_bruteforce(const PolynomialStep& step, const Natural& x0,
                                  const Natural& modulus) {
  if (auto f = to_u64_step(step, modulus)) return shape_u64(*f, to_u64(x0 % modulus));
  return cycle_shape_bruteforce([&](const Natural& x) { return step.eval(x, modulus); }, x0,
                                modulus);
}

Natural floyd_meet(const StepFn& step, const Natural& x0, const Natural& modulus) {
  if (modulus < 2) throw std::invalid_argument("modulus must be >= 2");
  Natural tortoise = step(x0 % modulus);
  Natural hare = step(tortoise);
  Natural i = 1;
  while (tortoise != hare) {
    tortoise = step(tortoise);
    hare = step(step(hare));
    ++i;
  }
  return i;
}

Natural floyd_meet(const PolynomialStep& step, const Natural& x0, const Natural& modulus) {
  if (auto f = to_u64_step(step, modulus)) {
    std::uint64_t tortoise = (*f)(to_u64(x0 % modulus));
    std::uint64_t hare = (*f)(tortoise);
    std::uint64_t i = 1;
    while (tortoise != hare) {
      tortoise = (*f)(tortoise);
      hare = (*f)((*f)(hare));
      ++i;
    }
    return Natural(static_cast<unsigned long>(i));
  }
  return floyd_meet([&](const Natural& x) { return step.eval(x, modulus); }, x0, modulus);
}

CycleShape reduced_cycle_shape(const PolynomialStep& step, const Natural& x0,
                               const Natural& modulus, const Natural& divisor) {
  if (divisor < 2 || modulus % divisor != 0)
    throw std::invalid_argument("divisor must be >= 2 and divide the modulus");
  return cycle_shape_bruteforce(step, x0 % divisor, divisor);
}

}  // namespace rho
