#include <doctest.h>

#include <cmath>

#include "bvopt/model_problems.hpp"
#include "bvopt/solver.hpp"

using namespace bvopt;

TEST_CASE("damped update halves large steps")
{
    std::vector<double> prev{0.0}, curr{0.5}, next{1.5};
    // |next - curr| = 1.0 >= |curr - prev| = 0.5, so the step is damped.
    std::vector<double> out = damped_update(prev, curr, next);
    CHECK(out[0] == doctest::Approx(1.0));
    // Shrinking steps pass through unchanged.
    std::vector<double> out2 = damped_update(prev, curr, {0.7});
    CHECK(out2[0] == 0.7);
    // Mismatched sizes pass through unchanged.
    std::vector<double> out3 = damped_update({0.1, 0.2}, curr, next);
    CHECK(out3 == next);
}

TEST_CASE("variational solve recovers the known control")
{
    ModelProblem mp = example1();
    Mesh mesh = Mesh::uniform(255);
    Solution sol = solve_variational(mesh, mp.spec);
    CHECK(sol.scheme == Scheme::variational);
    std::vector<Jump> jumps = sol.control.nonzero_jumps();
    REQUIRE(jumps.size() == 3);
    const std::vector<Jump>& exact = mp.exact.control.jumps();
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(jumps[i].position - exact[i].position) < 1e-2);
        CHECK(std::abs(jumps[i].height - exact[i].height) < 0.15);
    }
    CHECK(std::abs(sol.control.offset() - 0.5) < 0.05);
}

TEST_CASE("variational solution satisfies optimality certificates")
{
    ModelProblem mp = example1();
    Mesh mesh = Mesh::uniform(127);
    Solution sol = solve_variational(mesh, mp.spec);
    const double alpha = mp.spec.alpha;
    CHECK(sol.optimality.phi_at_one <= 1e-8 * alpha);
    CHECK(sol.optimality.phi_sup_sampled <= alpha * (1.0 + 1e-6));
    CHECK(sol.optimality.sign_mismatches == 0);
    CHECK(sol.inner.converged);
}

TEST_CASE("full discrete solve places jumps on gridpoints")
{
    ModelProblem mp = example1();
    Mesh mesh = Mesh::uniform(127);
    Solution sol = solve_full_discrete(mesh, mp.spec);
    CHECK(sol.scheme == Scheme::full);
    for (const Jump& j : sol.control.nonzero_jumps()) {
        const double scaled = j.position * 127.0;
        CHECK(std::abs(scaled - std::round(scaled)) < 1e-9);
    }
    const double alpha = mp.spec.alpha;
    CHECK(sol.optimality.phi_at_one <= 1e-8 * alpha);
    CHECK(sol.optimality.nodal_phi_bound_violation <= 1e-6 * alpha);
    CHECK(sol.optimality.sign_mismatches == 0);
}

TEST_CASE("full discrete control stays close to the exact one")
{
    ModelProblem mp = example1();
    Mesh mesh = Mesh::uniform(255);
    Solution sol = solve_full_discrete(mesh, mp.spec);
    CHECK(control_distance(sol.control, mp.exact.control, 1) < 0.1);
}

TEST_CASE("solver validates the problem data")
{
    Mesh mesh = Mesh::uniform(15);
    ProblemSpec bad;
    bad.diffusion = [](double) { return 1.0; };
    bad.reaction = [](double) { return 0.0; };
    bad.desired_state = [](double) { return 0.0; };
    bad.alpha = 1e-5;
    bad.nu = 0.0;
    CHECK_THROWS(solve_variational(mesh, bad));
}
