#include <doctest.h>

#include <cstdint>
#include <stdexcept>

#include "rho/algorithms.hpp"

using rho::Natural;

namespace {

bool is_proper_factor(const Natural& d, const Natural& n) {
  return d > 1 && d < n && n % d == 0;
}

}  // namespace

TEST_SUITE("algorithms") {
  TEST_CASE("classical rho on x^2 + 8 from 2") {
    const rho::FactorResult r = rho::pollard_rho_classical(3127, {2, 8}, 2);
    REQUIRE(r.factor.has_value());
    CHECK(*r.factor == 59);  // tortoise meets hare mod 59 first (index 3)
    REQUIRE(r.diagnostics.witness_pair.has_value());
    CHECK(r.diagnostics.witness_pair->first == 3);
    CHECK(r.diagnostics.witness_pair->second == 6);
  }

  TEST_CASE("classical rho gives up on trivial collisions") {
    // both reductions share lambda = 4 from this start, so the meet is full
    const rho::FactorResult r = rho::pollard_rho_classical(3551, {2, 8}, 38);
    CHECK_FALSE(r.factor.has_value());
    CHECK(r.diagnostics.note.find("trivial collision") != std::string::npos);

    // x^2 - 2 fixes 2: immediate trivial meet at index 1
    const rho::FactorResult f = rho::pollard_rho_classical(3127, {2, -2}, 2);
    CHECK_FALSE(f.factor.has_value());
    REQUIRE(f.diagnostics.witness_pair.has_value());
    CHECK(f.diagnostics.witness_pair->first == 1);
  }

  TEST_CASE("classical rho rejects bad moduli") {
    CHECK_THROWS_AS(rho::pollard_rho_classical(7919, {2, 1}, 2), std::invalid_argument);
    CHECK_THROWS_AS(rho::pollard_rho_classical(343, {2, 1}, 2), std::invalid_argument);
  }

  TEST_CASE("divisor candidates are the small primes dividing r") {
    const auto d1 = rho::divisors(15649927, 62615533);
    REQUIRE(d1.size() == 3);
    CHECK(d1[0] == 37);
    CHECK(d1[1] == 59);
    CHECK(d1[2] == 67);

    const auto d2 = rho::divisors(608652, 62615533);
    REQUIRE(d2.size() == 5);
    CHECK(d2[0] == 2);
    CHECK(d2[4] == 53);

    CHECK(rho::divisors(1, 143).empty());

    const auto d3 = rho::divisors(90, 209);
    REQUIRE(d3.size() == 3);
    CHECK(d3[0] == 2);
    CHECK(d3[1] == 3);
    CHECK(d3[2] == 5);
  }

  TEST_CASE("quadratic collision procedure on 143") {
    auto backend = rho::make_exact_backend();
    const rho::QuadraticFamily fam(1, 2, 143);
    const rho::FactorResult r = rho::quantum_rho(143, fam, 2, *backend);
    REQUIRE(r.factor.has_value());
    CHECK(*r.factor == 13);
    REQUIRE(r.diagnostics.order.has_value());
    CHECK(*r.diagnostics.order == 15);
    REQUIRE(r.diagnostics.period.has_value());
    CHECK(*r.diagnostics.period == 4);
    REQUIRE(r.diagnostics.successful_divisor.has_value());
    CHECK(*r.diagnostics.successful_divisor == 2);
    REQUIRE(r.diagnostics.witness_pair.has_value());
    CHECK(r.diagnostics.witness_pair->first == 143);
    CHECK(r.diagnostics.witness_pair->second == 145);
  }

  TEST_CASE("quadratic collision procedure catches a degenerate start") {
    auto backend = rho::make_exact_backend();
    const rho::QuadraticFamily fam(1, 2, 143);
    // alpha = (2*10 + 2)/2 = 11 shares a factor with 143: immediate factor
    const rho::FactorResult r = rho::quantum_rho(143, fam, 10, *backend);
    REQUIRE(r.factor.has_value());
    CHECK(*r.factor == 11);
    CHECK(r.diagnostics.note.find("alpha") != std::string::npos);
  }

  TEST_CASE("quadratic collision procedure with a known order skips the backend query") {
    auto backend = rho::make_exact_backend();
    const rho::QuadraticFamily fam(1, 2, 143);
    const rho::FactorResult r = rho::quantum_rho(143, fam, 2, *backend, Natural(15));
    REQUIRE(r.factor.has_value());
    CHECK(*r.factor == 13);
  }

  TEST_CASE("order finding with the halving test") {
    auto backend = rho::make_exact_backend();
    rho::FactorResult r = rho::shor(3, 209, *backend);
    REQUIRE(r.factor.has_value());
    CHECK(*r.factor == 11);
    CHECK(*r.diagnostics.order == 90);
    CHECK(*r.diagnostics.successful_divisor == 2);

    // ord(3, 62615533) = 15649927 is odd: the halving test cannot run
    r = rho::shor(3, 62615533, *backend);
    CHECK_FALSE(r.factor.has_value());
    CHECK(r.diagnostics.note.find("odd") != std::string::npos);

    // ord(12, 143) = 2 with 12^1 = 12 != -1: factor via gcd(12 - 1, 143)
    r = rho::shor(12, 143, *backend);
    REQUIRE(r.factor.has_value());
    CHECK(*r.factor == 11);

    // base sharing a factor with n short-circuits
    r = rho::shor(11, 143, *backend);
    REQUIRE(r.factor.has_value());
    CHECK(*r.factor == 11);
    CHECK(r.diagnostics.note.find("shares a factor") != std::string::npos);
  }

  TEST_CASE("order finding with the divisor scan") {
    auto backend = rho::make_exact_backend();
    rho::FactorResult r = rho::extended_shor(3, 62615533, *backend);
    REQUIRE(r.factor.has_value());
    CHECK(*r.factor == 7907);
    CHECK(*r.diagnostics.order == 15649927);
    REQUIRE(r.diagnostics.successful_divisor.has_value());
    CHECK(*r.diagnostics.successful_divisor == 37);
    REQUIRE(r.diagnostics.divisors_tried.size() == 1);
    CHECK(r.diagnostics.divisors_tried[0] == 37);
    REQUIRE(r.diagnostics.divisors_untried.size() == 2);
    CHECK(r.diagnostics.divisors_untried[0] == 59);
    CHECK(r.diagnostics.divisors_untried[1] == 67);

    r = rho::extended_shor(3, 209, *backend);
    REQUIRE(r.factor.has_value());
    CHECK(*r.factor == 11);
    CHECK(*r.diagnostics.successful_divisor == 2);
  }

  TEST_CASE("power-map collision procedure") {
    auto backend = rho::make_exact_backend();
    rho::FactorResult r = rho::quantum_rho_linear(3, 209, *backend);
    REQUIRE(r.factor.has_value());
    CHECK(*r.factor == 11);
    CHECK(*r.diagnostics.period == 90);
    REQUIRE(r.diagnostics.witness_pair.has_value());
    CHECK(r.diagnostics.witness_pair->first == 0);
    CHECK(r.diagnostics.witness_pair->second == 45);

    r = rho::quantum_rho_linear(3, 62615533, *backend);
    REQUIRE(r.factor.has_value());
    CHECK(*r.factor == 7907);

    // a = n - 1 has order 2 and the lone stride candidate collides trivially
    r = rho::quantum_rho_linear(142, 143, *backend);
    CHECK_FALSE(r.factor.has_value());
  }

  TEST_CASE("cyclotomic cofactor identity") {
    CHECK(rho::cyclotomic_cofactor(3, 90, 1, 209) == 1);
    CHECK_THROWS_AS(rho::cyclotomic_cofactor(3, 90, 7, 209), std::invalid_argument);
    for (std::uint64_t d : {2ull, 3ull, 5ull, 9ull, 45ull, 90ull}) {
      // (x^{r/d} - 1) * cofactor == x^r - 1 (mod n)
      const Natural n = 209;
      const Natural x = 3, r = 90;
      const Natural part = rho::mod_pow(x, r / d, n);
      const Natural whole = rho::mod_pow(x, r, n);
      const Natural cof = rho::cyclotomic_cofactor(x, r, d, n);
      CHECK((part + n - 1) % n * cof % n == (whole + n - 1) % n);
    }
  }

  TEST_CASE("factor pipeline on known composites") {
    rho::Factorization f = rho::factor(143);
    REQUIRE(f.complete());
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].base == 11);
    CHECK(f.factors[1].base == 13);

    f = rho::factor(62615533);
    REQUIRE(f.complete());
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].base == 7907);
    CHECK(f.factors[0].exponent == 1);
    CHECK(f.factors[1].base == 7919);

    f = rho::factor(343);
    REQUIRE(f.complete());
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0].base == 7);
    CHECK(f.factors[0].exponent == 3);

    f = rho::factor(2);
    REQUIRE(f.complete());
    CHECK(f.factors[0].base == 2);

    CHECK_THROWS_AS(rho::factor(1), std::invalid_argument);
  }

  TEST_CASE("factor pipeline reports partial results when starved") {
    rho::FactorConfig cfg;
    cfg.trial_bound = 2;
    cfg.attempts = 0;
    const Natural n = Natural(7907) * 7919;
    const rho::Factorization f = rho::factor(n, cfg);
    CHECK_FALSE(f.complete());
    REQUIRE(f.unfactored.size() == 1);
    CHECK(f.unfactored[0] == n);
  }

  TEST_CASE("factor pipeline recombines to the input") {
    for (std::uint64_t n : {858ull, 9991ull, 100160063ull, 24649ull, 104060401ull}) {
      const rho::Factorization f = rho::factor(n);
      REQUIRE(f.complete());
      Natural prod = 1;
      for (const auto& pp : f.factors) {
        CHECK(rho::is_probable_prime(pp.base));
        for (unsigned i = 0; i < pp.exponent; ++i) prod *= pp.base;
      }
      CHECK(prod == n);
    }
  }

  TEST_CASE("factor pipeline climbs the strategy ladder") {
    // 10007 * 10009: beyond the default trial bound, needs a collision strategy
    const Natural n = Natural(10007) * 10009;
    const rho::Factorization f = rho::factor(n);
    REQUIRE(f.complete());
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].base == 10007);
    CHECK(f.factors[1].base == 10009);
    CHECK(!f.attempts.empty());
    bool some_found = false;
    for (const auto& a : f.attempts) some_found = some_found || a.found;
    CHECK(some_found);
    for (const auto& a : f.attempts)
      if (a.found) CHECK(is_proper_factor(a.factor, n));
  }
}
