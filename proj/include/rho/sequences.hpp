#pragma once

#include <functional>

#include "rho/arith.hpp"

namespace rho {

// The iterated map f(x) = a x^2 + b x + (b^2 - 2b)(4a)^{-1}  (mod N).
// Requires N odd, N not a prime power, gcd(2a, N) = 1.
class QuadraticFamily {
 public:
  QuadraticFamily(Natural a, Natural b, Natural modulus);

  const Natural& a() const { return a_; }
  const Natural& b() const { return b_; }
  const Natural& modulus() const { return modulus_; }
  const Natural& constant_term() const { return constant_; }
  const Natural& inv_2a() const { return inv2a_; }

 private:
  Natural a_;
  Natural b_;
  Natural modulus_;
  Natural constant_;
  Natural inv2a_;
};

// The iterated map x -> a x (mod N); values a^i from x0 = 1.
// Requires 1 < a < N and gcd(a, N) = 1.
class LinearFamily {
 public:
  LinearFamily(Natural a, Natural modulus);

  const Natural& a() const { return a_; }
  const Natural& modulus() const { return modulus_; }

 private:
  Natural a_;
  Natural modulus_;
};

struct CycleShape {
  Natural mu;      // tail length: least index on the cycle
  Natural lambda;  // cycle length

  friend bool operator==(const CycleShape&, const CycleShape&) = default;
};

// Precomputed data for evaluating the quadratic orbit in closed form:
// alpha = (2a x0 + b) / 2 must be a unit, and `order` must satisfy
// alpha^order = 1. Then the i-th iterate is (2 alpha^(2^i mod order) - b)(2a)^{-1}.
class ClosedFormContext {
 public:
  ClosedFormContext(QuadraticFamily family, Natural x0, Natural order);

  const QuadraticFamily& family() const { return family_; }
  const Natural& x0() const { return x0_; }
  const Natural& alpha() const { return alpha_; }
  const Natural& order() const { return order_; }

 private:
  QuadraticFamily family_;
  Natural x0_;
  Natural alpha_;
  Natural order_;
};

// The raw iterated map x -> x^e + c (mod N); offset may be negative.
struct PolynomialStep {
  Natural exponent{2};
  Integer offset{0};

  Natural eval(const Natural& x, const Natural& modulus) const;
};

using StepFn = std::function<Natural(const Natural&)>;

Natural iterate_quadratic(const QuadraticFamily& family, const Natural& x);
Natural iterate_raw_polynomial(const Natural& exponent, const Integer& offset,
                               const Natural& modulus, const Natural& x);

// i may be any Natural; the exponent tower is reduced mod the context order.
Natural closed_form_g(const ClosedFormContext& ctx, const Natural& i);
Natural closed_form_linear(const LinearFamily& family, const Natural& i);

// Exact rho shape of the orbit of x0 by direct traversal. The StepFn overloads
// are the reference path (any step function); the PolynomialStep overloads take
// the fast path for machine-word moduli.
CycleShape cycle_shape_bruteforce(const StepFn& step, const Natural& x0, const Natural& modulus);
CycleShape cycle_shape_bruteforce(const PolynomialStep& step, const Natural& x0,
                                  const Natural& modulus);

// Least i >= 1 with x_i = x_{2i} (tortoise and hare), i.e. the least multiple
// of lambda that is >= max(mu, 1).
Natural floyd_meet(const StepFn& step, const Natural& x0, const Natural& modulus);
Natural floyd_meet(const PolynomialStep& step, const Natural& x0, const Natural& modulus);

// Shape of the same orbit reduced mod a divisor of the modulus.
CycleShape reduced_cycle_shape(const PolynomialStep& step, const Natural& x0,
                               const Natural& modulus, const Natural& divisor);

}  // namespace rho
