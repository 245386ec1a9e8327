#include <doctest.h>

#include <cmath>

#include "bvopt/model_problems.hpp"
#include "bvopt/verify.hpp"

using namespace bvopt;

TEST_CASE("benchmark with known solution is internally consistent")
{
    for (const CheckResult& c : analytic_solution_checks()) {
        INFO(c.name, ": ", c.detail);
        CHECK(c.passed);
    }
}

TEST_CASE("known-solution benchmark constants")
{
    ModelProblem mp = example1();
    REQUIRE(mp.has_exact);
    CHECK(mp.spec.alpha == 1e-5);
    const std::vector<Jump>& jumps = mp.exact.control.jumps();
    REQUIRE(jumps.size() == 3);
    CHECK(jumps[0].position == doctest::Approx(0.2225575).epsilon(1e-6));
    CHECK(jumps[0].height == 1.0);
    CHECK(jumps[1].position == 0.5);
    CHECK(jumps[1].height == -2.0);
    CHECK(jumps[2].position == doctest::Approx(0.7774425).epsilon(1e-6));
    CHECK(jumps[2].height == 1.5);
    CHECK(mp.exact.control.total_variation() == doctest::Approx(4.5));
    CHECK(mp.exact.control.offset() == 0.5);
}

TEST_CASE("smooth benchmark target")
{
    ModelProblem mp = example2();
    CHECK(!mp.has_exact);
    CHECK(mp.spec.alpha == 1e-5);
    CHECK(mp.spec.desired_state(0.0) == doctest::Approx(0.0));
    const double pi = std::acos(-1.0);
    CHECK(mp.spec.desired_state(0.5) == doctest::Approx(1.0 / (pi * pi)));
}

TEST_CASE("problem lookup by name")
{
    CHECK(model_problem_by_name("example1").has_exact);
    CHECK(!model_problem_by_name("example2").has_exact);
    CHECK_THROWS(model_problem_by_name("nope"));
}

TEST_CASE("projection properties hold on random draws")
{
    for (const CheckResult& c : projection_checks(100, 7)) {
        INFO(c.name, ": ", c.detail);
        CHECK(c.passed);
    }
}

TEST_CASE("discrete solution operator properties")
{
    for (const CheckResult& c : fem_checks()) {
        INFO(c.name, ": ", c.detail);
        CHECK(c.passed);
    }
    for (const CheckResult& c : symmetry_checks(20, 11)) {
        INFO(c.name, ": ", c.detail);
        CHECK(c.passed);
    }
}
