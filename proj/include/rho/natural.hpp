#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <cstddef>

namespace rho {

// Exact, width-free integers. Naturals are non-negative by convention; Integer
// is the same type used where a sign can legitimately appear (step offsets,
// differences before reduction).
using Natural = mpz_class;
using Integer = mpz_class;

inline std::size_t bit_length(const Natural& n) {
  if (n == 0) return 0;
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

inline bool fits_u64(const Natural& n) {
  return n >= 0 && mpz_fits_ulong_p(n.get_mpz_t()) != 0;
}

inline std::uint64_t to_u64(const Natural& n) { return mpz_get_ui(n.get_mpz_t()); }

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t acc = 1;
  base %= m;
  while (exp != 0) {
    if (exp & 1) acc = mulmod_u64(acc, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return acc;
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a %= b;
    std::uint64_t t = a;
    a = b;
    b = t;
  }
  return a;
}

// Deterministic stream mixer for seed derivation (attempt streams, backends).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace rho
