#include "rho/arith.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rho {

namespace {

void require_modulus(const Natural& m) {
  if (m < 2) throw std::invalid_argument("modulus must be >= 2, got " + m.get_str());
}

}  // namespace

Residue::Residue(Natural value, Natural modulus)
    : value_(std::move(value)), modulus_(std::move(modulus)) {
  require_modulus(modulus_);
  mpz_fdiv_r(value_.get_mpz_t(), value_.get_mpz_t(), modulus_.get_mpz_t());
}

Natural gcd(const Natural& a, const Natural& b) {
  if (a == 0 && b == 0) throw std::invalid_argument("gcd(0, 0) is undefined");
  Natural r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Natural lcm(const Natural& a, const Natural& b) {
  if (a == 0 || b == 0) throw std::invalid_argument("lcm requires nonzero arguments");
  Natural r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Natural mod_pow(const Natural& base, const Natural& exp, const Natural& modulus) {
  require_modulus(modulus);
  if (exp < 0) throw std::invalid_argument("exponent must be non-negative");
  Natural r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

Residue mod_pow(const Residue& base, const Natural& exp) {
  return {mod_pow(base.value(), exp, base.modulus()), base.modulus()};
}

Natural mod_inv(const Natural& a, const Natural& modulus) {
  require_modulus(modulus);
  Natural r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), modulus.get_mpz_t()) == 0)
    throw NotInvertible(gcd(a, modulus), modulus);
  return r;
}

Residue mod_inv(const Residue& a) { return {mod_inv(a.value(), a.modulus()), a.modulus()}; }

namespace {

// true iff `a` witnesses that odd n > 2 is composite; n - 1 = d * 2^s.
bool mr_witness(const Natural& n, const Natural& a, const Natural& d, unsigned long s) {
  Natural base = a % n;
  if (base == 0) return false;
  Natural x = mod_pow(base, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned long i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n - 1) return false;
  }
  return true;
}

const unsigned long kFixedBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// The fixed bases decide primality below this bound.
const Natural& deterministic_bound() {
  static const Natural bound("3317044064679887385961981");
  return bound;
}

Natural derived_base(const Natural& n, std::uint64_t& stream) {
  // a deterministic pseudo-random base in [2, n - 2]
  Natural acc = 0;
  std::size_t bits = 0;
  const std::size_t need = bit_length(n) + 64;
  while (bits < need) {
    stream = splitmix64(stream);
    acc <<= 64;
    acc += Natural(static_cast<unsigned long>(stream));
    bits += 64;
  }
  return acc % (n - 3) + 2;
}

}  // namespace

bool is_probable_prime(const Natural& n, unsigned rounds) {
  if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  if (n < 2) return false;
  for (unsigned long p : kFixedBases) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  Natural d = n - 1;
  const unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  for (unsigned long a : kFixedBases)
    if (mr_witness(n, a, d, s)) return false;
  if (n < deterministic_bound()) return true;
  std::uint64_t stream = 0x243f6a8885a308d3ULL ^ mpz_fdiv_ui(n.get_mpz_t(), 0xffffffffffffffc5ULL);
  for (unsigned i = std::size(kFixedBases); i < rounds; ++i)
    if (mr_witness(n, derived_base(n, stream), d, s)) return false;
  return true;
}

std::optional<PrimePower> as_prime_power(const Natural& n) {
  if (n < 2) throw std::invalid_argument("prime-power test requires n >= 2");
  for (unsigned long k = bit_length(n); k > 0; --k) {
    Natural root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0 && is_probable_prime(root))
      return PrimePower{root, static_cast<unsigned>(k)};
  }
  return std::nullopt;
}

std::vector<Natural> first_primes(std::size_t n) {
  if (n < 1) throw std::invalid_argument("need at least one prime");
  std::size_t limit = 14;
  if (n >= 6) {
    const double x = static_cast<double>(n);
    limit = static_cast<std::size_t>(x * (std::log(x) + std::log(std::log(x)))) + 2;
  }
  std::vector<bool> composite(limit + 1, false);
  std::vector<Natural> primes;
  primes.reserve(n);
  for (std::size_t p = 2; p <= limit && primes.size() < n; ++p) {
    if (composite[p]) continue;
    primes.emplace_back(static_cast<unsigned long>(p));
    for (std::size_t q = p * p; q <= limit; q += p) composite[q] = true;
  }
  if (primes.size() < n) throw std::logic_error("prime sieve limit underestimated");
  return primes;
}

std::vector<PrimePower> trial_factor(const Natural& n, const Natural& bound) {
  if (n < 1) throw std::invalid_argument("trial factorization requires n >= 1");
  if (bound < 2) throw std::invalid_argument("trial bound must be >= 2");
  std::vector<PrimePower> out;
  Natural rest = n;
  auto strip = [&](const Natural& p) {
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e > 0) out.push_back({p, e});
  };
  strip(2);
  strip(3);
  Natural d = 5;
  while (d * d <= rest && d <= bound) {
    strip(d);
    strip(d + 2);
    d += 6;
  }
  if (rest > 1) {
    if (rest <= bound * bound || is_probable_prime(rest)) {
      // below bound^2 the remainder is prime by construction
      out.push_back({rest, 1});
    } else {
      throw CapacityError("composite remainder " + rest.get_str() +
                          " resists trial division up to " + bound.get_str());
    }
  }
  std::sort(out.begin(), out.end(),
            [](const PrimePower& x, const PrimePower& y) { return x.base < y.base; });
  return out;
}

namespace {

Natural order_scan_mpz(const Natural& x, const Natural& m) {
  Natural acc = x % m;
  Natural r = 1;
  while (acc != 1) {
    acc = acc * x % m;
    ++r;
  }
  return r;
}

std::uint64_t order_scan_u64(std::uint64_t x, std::uint64_t m) {
  std::uint64_t acc = x % m;
  std::uint64_t r = 1;
  while (acc != 1) {
    acc = mulmod_u64(acc, x, m);
    ++r;
  }
  return r;
}

// Same scan split into blocks handed to threads; blocks after the first hit
// are skipped, and the lowest hit wins, so the result matches the serial scan.
std::uint64_t order_scan_u64_parallel(std::uint64_t x, std::uint64_t m) {
  constexpr std::uint64_t kBlock = 1u << 15;
  const std::uint64_t blocks = (m + kBlock - 1) / kBlock;
  std::atomic<std::uint64_t> best{UINT64_MAX};
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (std::uint64_t b = 0; b < blocks; ++b) {
    if (b * kBlock >= best.load(std::memory_order_relaxed)) continue;
    // exponents in [b*kBlock + 1, (b+1)*kBlock]
    std::uint64_t e = b * kBlock + 1;
    std::uint64_t acc = powmod_u64(x, e, m);
    const std::uint64_t stop = std::min((b + 1) * kBlock, m);
    for (; e <= stop; ++e) {
      if (acc == 1) {
        std::uint64_t seen = best.load(std::memory_order_relaxed);
        while (e < seen && !best.compare_exchange_weak(seen, e, std::memory_order_relaxed)) {
        }
        break;
      }
      acc = mulmod_u64(acc, x, m);
    }
  }
  if (best.load() == UINT64_MAX) throw std::logic_error("order scan missed its target");
  return best.load();
}

// carmichael exponent of (Z/m)^* from the factorization of m
Natural group_exponent(const std::vector<PrimePower>& factors) {
  Natural e = 1;
  for (const auto& pp : factors) {
    Natural comp;
    if (pp.base == 2) {
      if (pp.exponent == 1)
        comp = 1;
      else if (pp.exponent == 2)
        comp = 2;
      else
        comp = Natural(1) << (pp.exponent - 2);
    } else {
      Natural pk1 = 1;
      for (unsigned i = 1; i < pp.exponent; ++i) pk1 *= pp.base;
      comp = pk1 * (pp.base - 1);
    }
    if (comp != 0 && comp != 1) e = lcm(e, comp);
  }
  return e;
}

Natural order_via_exponent(const Natural& x, const Natural& m) {
  Natural e = group_exponent(trial_factor(m));
  for (const auto& pp : trial_factor(e)) {
    for (unsigned i = 0; i < pp.exponent; ++i) {
      if (e % pp.base != 0) break;
      Natural candidate = e / pp.base;
      if (mod_pow(x, candidate, m) != 1) break;
      e = candidate;
    }
  }
  return e;
}

}  // namespace

Natural multiplicative_order(const Natural& x, const Natural& modulus, OrderStrategy strategy) {
  require_modulus(modulus);
  Natural xr = x % modulus;
  Natural g = gcd(xr == 0 ? modulus : xr, modulus);
  if (g != 1)
    throw std::invalid_argument("multiplicative order requires a unit; gcd is " + g.get_str());
  if (xr == 1) return 1;
  switch (strategy) {
    case OrderStrategy::Scan:
      if (fits_u64(modulus)) return Natural(static_cast<unsigned long>(
          order_scan_u64(to_u64(xr), to_u64(modulus))));
      return order_scan_mpz(xr, modulus);
    case OrderStrategy::ScanParallel:
      if (fits_u64(modulus)) return Natural(static_cast<unsigned long>(
          order_scan_u64_parallel(to_u64(xr), to_u64(modulus))));
      return order_scan_mpz(xr, modulus);
    case OrderStrategy::FactoredExponent:
      return order_via_exponent(xr, modulus);
  }
  throw std::logic_error("unknown order strategy");
}

Natural multiplicative_order(const Residue& x, OrderStrategy strategy) {
  return multiplicative_order(x.value(), x.modulus(), strategy);
}

}  // namespace rho
