#include <doctest.h>

#include "rho/suites.hpp"

TEST_SUITE("suites") {
  TEST_CASE("closed-form sweep at a small bound") {
    const rho::SuiteResult r = rho::closed_form_suite(3000, 30, 60, 7);
    CHECK(r.passed);
    CHECK(r.instances > 0);
    CHECK(r.counterexample.empty());
    CHECK(r.name == "closed-form");
  }

  TEST_CASE("meeting-point sweep at a small bound") {
    const rho::SuiteResult r = rho::floyd_suite(300, 6);
    CHECK(r.passed);
    CHECK(r.instances > 0);
    CHECK(r.name == "floyd");
  }

  TEST_CASE("cycle-length lcm sweep at a small bound") {
    const rho::SuiteResult r = rho::lcm_lemma_suite(40, 8);
    CHECK(r.passed);
    CHECK(r.instances > 0);
    CHECK(r.name == "lcm-lemma");
  }

  TEST_CASE("stride characterization sweep at a small bound") {
    const rho::SuiteResult r = rho::theorem_main_suite(30, 6);
    CHECK(r.passed);
    CHECK(r.instances > 0);
    CHECK(r.name == "theorem-main");
  }

  TEST_CASE("procedure agreement sweep at a small bound") {
    const rho::SuiteResult r = rho::reduction_suite(1200, 12);
    CHECK(r.passed);
    CHECK(r.instances > 0);
    CHECK(r.name == "reduction");
  }
}
