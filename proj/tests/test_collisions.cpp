#include <doctest.h>

#include <cstdint>
#include <stdexcept>

#include "rho/collisions.hpp"

using rho::Natural;

TEST_SUITE("collisions") {
  TEST_CASE("classify separates the three pair kinds") {
    const rho::Collision c = rho::classify(615, 456, 3127);
    CHECK(c.kind == rho::CollisionKind::Nontrivial);
    CHECK(c.gcd_value == 53);

    const rho::Collision t = rho::classify(42, 42, 3127);
    CHECK(t.kind == rho::CollisionKind::Trivial);
    CHECK(t.gcd_value == 3127);

    const rho::Collision n = rho::classify(5, 4, 3127);
    CHECK(n.kind == rho::CollisionKind::NotCollision);
    CHECK(n.gcd_value == 1);

    const rho::Collision big = rho::classify(16896691, 10689696, 62615533);
    CHECK(big.kind == rho::CollisionKind::Nontrivial);
    CHECK(big.gcd_value == 7907);
  }

  TEST_CASE("prime exponent extraction") {
    CHECK(rho::prime_exponent(3, 450) == 2);
    CHECK(rho::prime_exponent(3, 14) == 0);
    CHECK(rho::prime_exponent(2, 1024) == 10);
    CHECK(rho::prime_exponent(5, 1) == 0);
    CHECK_THROWS_AS(rho::prime_exponent(6, 450), std::invalid_argument);
  }

  TEST_CASE("distinguishing primes of a cycle-length pair") {
    const auto dps = rho::distinguishing_primes(1914, 1908);
    // 1914 = 2*3*11*29, 1908 = 2^2*3^2*53
    REQUIRE(dps.size() == 5);
    CHECK(dps[0] == rho::DistinguishingPrime{2, 1, 2});
    CHECK(dps[1] == rho::DistinguishingPrime{3, 1, 2});
    CHECK(dps[2] == rho::DistinguishingPrime{11, 1, 0});
    CHECK(dps[3] == rho::DistinguishingPrime{29, 1, 0});
    CHECK(dps[4] == rho::DistinguishingPrime{53, 0, 1});

    const auto sp = rho::distinguishing_primes(3953, 3959);
    // 3953 = 59*67, 3959 = 37*107
    bool has37 = false;
    for (const auto& dp : sp) has37 = has37 || dp == rho::DistinguishingPrime{37, 0, 1};
    CHECK(has37);

    CHECK(rho::distinguishing_primes(360, 360).empty());
  }

  TEST_CASE("construct_m picks the first deficient prime") {
    // lcm(1914, 1908) = 608652; first prime with exp_a < exp_b is 2
    auto m = rho::construct_m(1914, 1908);
    REQUIRE(m.has_value());
    CHECK(*m == 304326);

    // lambda_a = 4, lambda_b = 3: prime 3 is deficient on the a side (0 < 1),
    // so t = 3 and m = 12/3 = 4
    m = rho::construct_m(4, 3);
    REQUIRE(m.has_value());
    CHECK(*m == 4);

    // swapped: prime 2 is deficient (0 < 2), so t = 2 and m = 12/2 = 6
    m = rho::construct_m(3, 4);
    REQUIRE(m.has_value());
    CHECK(*m == 6);

    // equal lengths: no stride exists
    CHECK_FALSE(rho::construct_m(12, 12).has_value());

    // no deficient prime at all: 12 = 2^2*3 vs 2 -> fall to the first overall (2)
    m = rho::construct_m(12, 2);
    REQUIRE(m.has_value());
    CHECK(*m == 6);
  }

  TEST_CASE("construct_m stride divides exactly one side's annihilator") {
    // property: lambda_a | m xor lambda_b | m whenever m exists
    for (std::uint64_t la = 1; la <= 60; ++la)
      for (std::uint64_t lb = 1; lb <= 60; ++lb) {
        const auto m = rho::construct_m(la, lb);
        if (la == lb) {
          CHECK_FALSE(m.has_value());
          continue;
        }
        REQUIRE(m.has_value());
        const Natural l = rho::lcm(Natural(la), Natural(lb));
        CHECK(*m > 0);
        CHECK(*m < l);
        CHECK(l % *m == 0);
        const bool div_a = (*m % la == 0);
        const bool div_b = (*m % lb == 0);
        CHECK(div_a != div_b);
      }
  }

  TEST_CASE("characterization of x^2 + 8 from 2 over 53 * 59") {
    const rho::PolynomialStep step{2, 8};
    const auto rep = rho::verify_characterization(step, 2, 53, 59);
    CHECK(rep.lambda_a == 4);
    CHECK(rep.lambda_b == 3);
    CHECK(rep.lambda == 12);
    REQUIRE(rep.m.has_value());
    CHECK(*rep.m == 4);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->i == 8);
    CHECK(rep.witness->j == 12);
    CHECK(rep.witness->gcd_value == 53);
    CHECK(rep.witness->kind == rho::CollisionKind::Nontrivial);
    CHECK_FALSE(rep.cycle_counterexample.has_value());
  }

  TEST_CASE("characterization of x^2 + 8 from 38 over 53 * 67") {
    const rho::PolynomialStep step{2, 8};
    const auto rep = rho::verify_characterization(step, 38, 53, 67);
    CHECK(rep.lambda_a == 4);
    CHECK(rep.lambda_b == 4);
    CHECK(rep.lambda == 4);
    CHECK_FALSE(rep.m.has_value());
    CHECK_FALSE(rep.witness.has_value());
  }
}
