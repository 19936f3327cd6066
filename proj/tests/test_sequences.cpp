#include <doctest.h>

#include <cstdint>
#include <stdexcept>

#include "rho/sequences.hpp"

using rho::Natural;

namespace {

rho::StepFn generic_step(const rho::PolynomialStep& step, const Natural& modulus) {
  return [step, modulus](const Natural& x) { return step.eval(x, modulus); };
}

}  // namespace

TEST_SUITE("sequences") {
  TEST_CASE("quadratic family validation and iteration") {
    const rho::QuadraticFamily f(1, 2, 143);
    CHECK(f.constant_term() == 0);
    CHECK(rho::iterate_quadratic(f, 2) == 8);
    CHECK(rho::iterate_quadratic(f, 0) == 0);

    const rho::QuadraticFamily g(1, 2, 62615533);
    CHECK(rho::iterate_quadratic(g, 3) == 15);

    CHECK_THROWS_AS(rho::QuadraticFamily(1, 2, 144), std::invalid_argument);  // even
    CHECK_THROWS_AS(rho::QuadraticFamily(1, 2, 343), std::invalid_argument);  // prime power
    CHECK_THROWS_AS(rho::QuadraticFamily(13, 2, 143), std::invalid_argument); // gcd(2a, n) > 1
    CHECK_THROWS_AS(rho::LinearFamily(11, 143), std::invalid_argument);
    CHECK_THROWS_AS(rho::LinearFamily(1, 143), std::invalid_argument);
  }

  TEST_CASE("raw polynomial step") {
    const rho::PolynomialStep plus8{2, 8};
    CHECK(plus8.eval(2, 3127) == 12);
    const rho::PolynomialStep minus2{2, -2};
    CHECK(minus2.eval(2, 3127) == 2);  // fixed point
    CHECK(rho::iterate_raw_polynomial(2, 8, 3127, 12) == 152);
    const rho::PolynomialStep cubic{3, 1};
    CHECK(cubic.eval(3, 100) == 28);
  }

  TEST_CASE("closed form matches iteration on the quadratic orbit") {
    const rho::QuadraticFamily fam(1, 2, 143);
    const rho::ClosedFormContext ctx(fam, 2, 15);  // alpha = 3, ord(3,143) = 15
    CHECK(ctx.alpha() == 3);
    CHECK(rho::closed_form_g(ctx, 0) == 2);
    Natural x = 2;
    for (std::uint64_t i = 1; i <= 40; ++i) {
      x = rho::iterate_quadratic(fam, x);
      CHECK(rho::closed_form_g(ctx, i) == x);
    }
    CHECK(rho::closed_form_g(ctx, 143) == 125);

    const rho::QuadraticFamily big(1, 2, 62615533);
    const rho::ClosedFormContext bctx(big, 3, 15649927);  // alpha = 4
    CHECK(bctx.alpha() == 4);
    CHECK(rho::closed_form_g(bctx, 0) == 3);
    CHECK(rho::closed_form_g(bctx, Natural(62615533)) == 10689696);
  }

  TEST_CASE("closed form context validation") {
    const rho::QuadraticFamily fam(1, 2, 143);
    // alpha = (2*12 + 2)/2 = 13 shares a factor with 143
    CHECK_THROWS_AS(rho::ClosedFormContext(fam, 12, 15), rho::NotInvertible);
    // claimed order does not annihilate alpha
    CHECK_THROWS_AS(rho::ClosedFormContext(fam, 2, 7), std::invalid_argument);
  }

  TEST_CASE("closed form for the power map") {
    const rho::LinearFamily lin(3, 209);
    CHECK(rho::closed_form_linear(lin, 0) == 1);
    CHECK(rho::closed_form_linear(lin, 45) == 56);
    const rho::LinearFamily big(3, 62615533);
    CHECK(rho::closed_form_linear(big, 422971) == 48604330);
  }

  TEST_CASE("cycle shapes of x^2 + 8 from x0 = 2") {
    const rho::PolynomialStep step{2, 8};
    const rho::CycleShape s53 = rho::cycle_shape_bruteforce(step, 2, 53);
    CHECK(s53.mu == 8);
    CHECK(s53.lambda == 4);
    const rho::CycleShape s59 = rho::cycle_shape_bruteforce(step, 2, 59);
    CHECK(s59.mu == 3);
    CHECK(s59.lambda == 3);
    const rho::CycleShape s = rho::cycle_shape_bruteforce(step, 2, 3127);
    CHECK(s.mu == 8);
    CHECK(s.lambda == 12);

    // the orbit values the shape pins down
    Natural x = 2;
    for (int i = 0; i < 8; ++i) x = step.eval(x, 3127);
    CHECK(x == 615);  // x_8, first on the cycle
    for (int i = 8; i < 12; ++i) x = step.eval(x, 3127);
    CHECK(x == 456);  // x_12 = x_8 shifted by m = 4
  }

  TEST_CASE("generic and fast shape paths agree") {
    for (std::uint64_t n : {53ull, 59ull, 3127ull, 3551ull, 143ull})
      for (std::int64_t c : {1, 8, -2})
        for (std::uint64_t x0 : {0ull, 2ull, 38ull}) {
          const rho::PolynomialStep step{2, c};
          const rho::CycleShape fast = rho::cycle_shape_bruteforce(step, x0, n);
          const rho::CycleShape ref =
              rho::cycle_shape_bruteforce(generic_step(step, n), x0, n);
          CHECK(fast == ref);
          CHECK(rho::floyd_meet(step, x0, n) ==
                rho::floyd_meet(generic_step(step, n), x0, n));
        }
  }

  TEST_CASE("floyd meeting index is the least cycle multiple past the tail") {
    const rho::PolynomialStep step{2, 8};
    CHECK(rho::floyd_meet(step, 2, 53) == 8);    // mu=8, lambda=4
    CHECK(rho::floyd_meet(step, 2, 59) == 3);    // mu=3, lambda=3
    CHECK(rho::floyd_meet(step, 2, 3127) == 12); // mu=8, lambda=12
    const rho::PolynomialStep fixed{2, -2};
    CHECK(rho::floyd_meet(fixed, 2, 3127) == 1); // fixed point: mu=0 -> i=1
  }

  TEST_CASE("reduced shapes divide consistently") {
    const rho::PolynomialStep step{2, 8};
    const rho::CycleShape r53 = rho::reduced_cycle_shape(step, 2, 3127, 53);
    CHECK(r53.mu == 8);
    CHECK(r53.lambda == 4);
    const rho::CycleShape r59 = rho::reduced_cycle_shape(step, 2, 3127, 59);
    CHECK(r59.mu == 3);
    CHECK(r59.lambda == 3);
    CHECK_THROWS_AS(rho::reduced_cycle_shape(step, 2, 3127, 10), std::invalid_argument);

    // shadow property: the full shape projects onto each reduction
    const rho::CycleShape full = rho::cycle_shape_bruteforce(step, 2, 3127);
    CHECK(full.lambda == rho::lcm(r53.lambda, r59.lambda));
    CHECK(full.mu == std::max(r53.mu, r59.mu));
  }
}
