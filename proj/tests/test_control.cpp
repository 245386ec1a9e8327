#include <doctest.h>

#include <cmath>

#include "bvopt/fem.hpp"
#include "bvopt/jump_control.hpp"

using namespace bvopt;

TEST_CASE("jump control evaluates right-continuously")
{
    JumpControl q(0.5, {{0.25, 1.0}, {0.75, -2.0}});
    CHECK(q(0.0) == 0.5);
    CHECK(q(0.25) == 1.5); // jump included at its position
    CHECK(q(0.5) == 1.5);
    CHECK(q(0.75) == -0.5);
    CHECK(q(1.0) == -0.5);
    CHECK(q.total_variation() == 3.0);
}

TEST_CASE("jumps are sorted and merged at construction")
{
    JumpControl q(0.0, {{0.7, 1.0}, {0.2, 2.0}, {0.7, 0.5}});
    REQUIRE(q.jumps().size() == 2);
    CHECK(q.jumps()[0].position == 0.2);
    CHECK(q.jumps()[1].height == 1.5);
    CHECK_THROWS(JumpControl(0.0, {{0.0, 1.0}}));
    CHECK_THROWS(JumpControl(0.0, {{1.0, 1.0}}));
}

TEST_CASE("integrate is exact")
{
    JumpControl q(1.0, {{0.5, 2.0}});
    CHECK(q.integrate(0.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(q.integrate(0.25, 0.75) == doctest::Approx(1.0 * 0.25 + 3.0 * 0.25).epsilon(1e-15));
    CHECK(q.integrate(0.6, 0.9) == doctest::Approx(3.0 * 0.3).epsilon(1e-15));
}

TEST_CASE("json round trip preserves the control")
{
    JumpControl q(0.125, {{0.3, -1.5}, {0.6, 0.25}});
    JumpControl r = JumpControl::from_json(q.to_json());
    CHECK(r.offset() == q.offset());
    REQUIRE(r.jumps().size() == 2);
    CHECK(r.jumps()[1].position == 0.6);
    CHECK(r.jumps()[1].height == 0.25);
}

TEST_CASE("projection averages over elements")
{
    Mesh mesh = Mesh::uniform(4);
    JumpControl q(0.0, {{0.125, 1.0}});
    PiecewiseConstant p = project_Pi_h(q, mesh);
    CHECK(p.values[0] == doctest::Approx(0.5));
    CHECK(p.values[1] == doctest::Approx(1.0));
    CHECK(p.total_variation() <= q.total_variation() + 1e-15);
}

TEST_CASE("control distance agrees with hand computation")
{
    JumpControl q1(0.0, {{0.5, 1.0}});
    JumpControl q2(0.0, {{0.25, 1.0}});
    // They differ by 1 on (0.25, 0.5).
    CHECK(control_distance(q1, q2, 1) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(control_distance(q1, q2, 2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(control_distance(q1, q1, 1) == 0.0);
}

TEST_CASE("exact load of a jump control matches quadrature")
{
    Mesh mesh = Mesh::uniform(9);
    JumpControl q(0.7, {{0.21, 1.3}, {0.64, -0.8}});
    std::vector<double> exact = load_of_jump_control(mesh, q);
    // The integrand is discontinuous inside elements, so use a fine
    // composite rule on element halves for the comparison.
    std::vector<double> approx(mesh.interior_count(), 0.0);
    const int pieces = 2000;
    for (std::size_t j = 1; j <= mesh.interior_count(); ++j) {
        double v = 0.0;
        const double xl = mesh.node(j - 1), xj = mesh.node(j), xr = mesh.node(j + 1);
        for (int s = 0; s < pieces; ++s) {
            double a = xl + (xj - xl) * s / pieces;
            double b = xl + (xj - xl) * (s + 1) / pieces;
            double m = 0.5 * (a + b);
            v += q(m) * (m - xl) / (xj - xl) * (b - a);
            a = xj + (xr - xj) * s / pieces;
            b = xj + (xr - xj) * (s + 1) / pieces;
            m = 0.5 * (a + b);
            v += q(m) * (xr - m) / (xr - xj) * (b - a);
        }
        approx[j - 1] = v;
    }
    for (std::size_t i = 0; i < exact.size(); ++i)
        CHECK(exact[i] == doctest::Approx(approx[i]).epsilon(1e-3));
}
