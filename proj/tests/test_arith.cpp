#include <doctest.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rho/arith.hpp"

using rho::Natural;

TEST_SUITE("arith") {
  TEST_CASE("gcd on known pairs") {
    CHECK(rho::gcd(Natural(159), Natural(3127)) == 53);
    CHECK(rho::gcd(Natural(55), Natural(209)) == 11);
    CHECK(rho::gcd(Natural(0), Natural(7)) == 7);
    CHECK(rho::gcd(Natural(7), Natural(0)) == 7);
    CHECK(rho::gcd(Natural(12), Natural(18)) == 6);
    CHECK_THROWS_AS(rho::gcd(Natural(0), Natural(0)), std::invalid_argument);
  }

  TEST_CASE("lcm on known pairs") {
    CHECK(rho::lcm(Natural(1914), Natural(1908)) == 608652);
    CHECK(rho::lcm(Natural(5), Natural(18)) == 90);
    CHECK(rho::lcm(Natural(4), Natural(6)) == 12);
    CHECK_THROWS_AS(rho::lcm(Natural(0), Natural(5)), std::invalid_argument);
    CHECK_THROWS_AS(rho::lcm(Natural(5), Natural(0)), std::invalid_argument);
  }

  TEST_CASE("mod_pow matches naive evaluation") {
    CHECK(rho::mod_pow(Natural(3), Natural(8), Natural(143)) == 126);
    CHECK(rho::mod_pow(Natural(3), Natural(45), Natural(209)) == 56);
    CHECK(rho::mod_pow(Natural(2), Natural(0), Natural(9)) == 1);
    for (std::uint64_t m = 2; m < 40; ++m)
      for (std::uint64_t x = 0; x < m; ++x)
        for (std::uint64_t e = 0; e < 12; ++e) {
          std::uint64_t naive = 1 % m;
          for (std::uint64_t k = 0; k < e; ++k) naive = naive * x % m;
          CHECK(rho::mod_pow(x, e, m) == naive);
          CHECK(rho::mod_pow(Natural(x), Natural(e), Natural(m)) == naive);
        }
  }

  TEST_CASE("mod_inv and the shared-factor failure") {
    CHECK(rho::mod_inv(Natural(2), Natural(143)) == 72);
    CHECK(Natural(2) * rho::mod_inv(Natural(2), Natural(143)) % 143 == 1);
    CHECK(rho::mod_inv(7, 143) * 7 % 143 == 1);
    try {
      rho::mod_inv(Natural(13), Natural(143));
      FAIL("expected NotInvertible");
    } catch (const rho::NotInvertible& e) {
      CHECK(e.shared_factor() == 13);
    }
    CHECK_THROWS_AS(rho::mod_inv(Natural(0), Natural(9)), rho::NotInvertible);
  }

  TEST_CASE("primality agrees with a sieve below 10^4") {
    CHECK(rho::is_probable_prime(Natural(7919)));
    CHECK(rho::is_probable_prime(Natural(2)));
    CHECK_FALSE(rho::is_probable_prime(Natural(3127)));
    CHECK_FALSE(rho::is_probable_prime(Natural(1)));
    CHECK_FALSE(rho::is_probable_prime(Natural(0)));
    CHECK(rho::is_probable_prime(Natural("170141183460469231731687303715884105727")));

    std::vector<bool> composite(10000, false);
    for (std::size_t p = 2; p < composite.size(); ++p)
      if (!composite[p])
        for (std::size_t q = p * p; q < composite.size(); q += p) composite[q] = true;
    for (std::size_t v = 2; v < composite.size(); ++v)
      CHECK(rho::is_probable_prime(Natural(static_cast<unsigned long>(v))) == !composite[v]);
  }

  TEST_CASE("prime power detection") {
    auto pp = rho::as_prime_power(Natural(343));
    REQUIRE(pp.has_value());
    CHECK(pp->base == 7);
    CHECK(pp->exponent == 3);

    pp = rho::as_prime_power(Natural(13));
    REQUIRE(pp.has_value());
    CHECK(pp->base == 13);
    CHECK(pp->exponent == 1);

    CHECK_FALSE(rho::as_prime_power(Natural(143)).has_value());
    CHECK_THROWS_AS(rho::as_prime_power(Natural(1)), std::invalid_argument);
    CHECK_FALSE(rho::as_prime_power(Natural(12)).has_value());

    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 97ull})
      for (unsigned k = 1; k <= 10; ++k) {
        Natural v = 1;
        for (unsigned i = 0; i < k; ++i) v *= p;
        auto got = rho::as_prime_power(v);
        REQUIRE(got.has_value());
        CHECK(got->base == p);
        CHECK(got->exponent == k);
      }
    CHECK_FALSE(rho::as_prime_power(Natural(7907) * 7919).has_value());
  }

  TEST_CASE("first_primes produces the ascending prefix") {
    const auto p12 = rho::first_primes(12);
    REQUIRE(p12.size() == 12);
    CHECK(p12.front() == 2);
    CHECK(p12.back() == 37);
    const auto p26 = rho::first_primes(26);
    CHECK(p26.back() == 101);
    const auto p1000 = rho::first_primes(1000);
    REQUIRE(p1000.size() == 1000);
    CHECK(p1000.back() == 7919);
    CHECK_THROWS_AS(rho::first_primes(0), std::invalid_argument);
  }

  TEST_CASE("multiplicative order, all strategies agree") {
    CHECK(rho::multiplicative_order(Natural(3), Natural(143)) == 15);
    CHECK(rho::multiplicative_order(Natural(3), Natural(209)) == 90);
    CHECK(rho::multiplicative_order(Natural(1), Natural(101)) == 1);
    for (auto strat : {rho::OrderStrategy::Scan, rho::OrderStrategy::ScanParallel,
                       rho::OrderStrategy::FactoredExponent})
      CHECK(rho::multiplicative_order(Natural(4), Natural(62615533), strat) == 15649927);
    for (std::uint64_t n : {15ull, 91ull, 209ull, 3127ull})
      for (std::uint64_t x = 2; x < 30; ++x) {
        if (rho::gcd(Natural(x), Natural(n)) != 1) continue;
        const Natural scan =
            rho::multiplicative_order(Natural(x), Natural(n), rho::OrderStrategy::Scan);
        CHECK(scan == rho::multiplicative_order(Natural(x), Natural(n),
                                                rho::OrderStrategy::ScanParallel));
        CHECK(scan == rho::multiplicative_order(Natural(x), Natural(n),
                                                rho::OrderStrategy::FactoredExponent));
        CHECK(rho::mod_pow(Natural(x), scan, Natural(n)) == 1);
      }
    CHECK_THROWS_AS(rho::multiplicative_order(Natural(13), Natural(143)),
                    std::invalid_argument);
  }

  TEST_CASE("trial_factor splits smooth parts") {
    const auto f = rho::trial_factor(Natural(608652), 1000);
    REQUIRE(f.size() == 5);
    CHECK(f[0].base == 2);
    CHECK(f[0].exponent == 2);
    CHECK(f[1].base == 3);
    CHECK(f[1].exponent == 2);
    CHECK(f[2].base == 11);
    CHECK(f[3].base == 29);
    CHECK(f[4].base == 53);

    // remainder above bound^2 and not provably prime is a hard failure
    CHECK_THROWS_AS(rho::trial_factor(Natural(1009) * 1013 * 1009 * 1013, 100),
                    rho::CapacityError);
    // remainder that passes the primality test is kept as a prime factor
    const auto g = rho::trial_factor(Natural(2) * 1009, 10);
    REQUIRE(g.size() == 2);
    CHECK(g[1].base == 1009);
    CHECK(g[1].exponent == 1);
  }
}
