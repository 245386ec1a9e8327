#include <doctest.h>

#include <cmath>

#include "bvopt/adjoint.hpp"

using namespace bvopt;

TEST_CASE("phi integrates a piecewise-linear function exactly")
{
    Mesh mesh = Mesh::uniform(4);
    // z with nodal values 0, 1, 0, -1, 0 (zero at the boundary as required).
    NodalFunction z(mesh, {0.0, 1.0, 0.0, -1.0, 0.0});
    PhiFunction phi(z);
    CHECK(phi.at_node(1) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(phi.at_node(2) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(phi.at_one() == doctest::Approx(0.0).epsilon(1e-15));
    // Inside the first element phi is quadratic: x^2 * slope / 2 with slope 4.
    CHECK(phi(0.1) == doctest::Approx(2.0 * 0.1 * 0.1).epsilon(1e-13));
}

TEST_CASE("interior roots of sign changes are interpolated")
{
    Mesh mesh = Mesh::uniform(4);
    NodalFunction z(mesh, {0.0, 1.0, -1.0, 1.0, 0.0});
    std::vector<double> roots = find_interior_roots(z);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == doctest::Approx(0.375).epsilon(1e-13));
    CHECK(roots[1] == doctest::Approx(0.625).epsilon(1e-13));
}

TEST_CASE("near-zero interior nodes count as roots")
{
    Mesh mesh = Mesh::uniform(4);
    NodalFunction z(mesh, {0.0, 1.0, 1e-16, 1.0, 0.0});
    std::vector<double> roots = find_interior_roots(z);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == 0.5);
}

TEST_CASE("boundary nodes are never roots")
{
    Mesh mesh = Mesh::uniform(4);
    NodalFunction z(mesh, {0.0, 1.0, 2.0, 1.0, 0.0});
    CHECK(find_interior_roots(z).empty());
}

TEST_CASE("close roots are merged")
{
    Mesh mesh = Mesh::uniform(4);
    NodalFunction z(mesh, {0.0, 1e-18, 1.0, 1.0, 0.0});
    // Node 1 is a near-zero root and the segment [0, 0.25] has no sign change.
    std::vector<double> roots = find_interior_roots(z, 1e-15, 0.3);
    CHECK(roots.size() == 1);
}

TEST_CASE("optimality report flags sign mismatches")
{
    Mesh mesh = Mesh::uniform(4);
    // phi ends positive at the jump position but the jump is negative.
    NodalFunction z(mesh, {0.0, 1.0, 1.0, 1.0, 0.0});
    JumpControl q(0.0, {{0.5, -1.0}});
    OptimalityReport rep = optimality_report(q, z, 0.375, Scheme::variational);
    CHECK(rep.sign_mismatches == 1);
    JumpControl qp(0.0, {{0.5, +1.0}});
    OptimalityReport rep2 = optimality_report(qp, z, 0.375, Scheme::variational);
    CHECK(rep2.sign_mismatches == 0);
    // Phi(0.5) = 0.125 + 0.25 = 0.375 here, matching alpha exactly.
    CHECK(rep2.max_abs_phi_at_jumps == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("full scheme reports nodal bound violations")
{
    Mesh mesh = Mesh::uniform(4);
    NodalFunction z(mesh, {0.0, 1.0, 1.0, 1.0, 0.0});
    JumpControl q(0.0);
    OptimalityReport rep = optimality_report(q, z, 0.1, Scheme::full);
    // max nodal |Phi| = Phi(1) = 0.75, violation 0.65.
    CHECK(rep.nodal_phi_bound_violation == doctest::Approx(0.65).epsilon(1e-13));
    CHECK(rep.phi_sup_sampled == doctest::Approx(0.75).epsilon(1e-13));
}

TEST_CASE("structural diagnostics warn on flat and clustered roots")
{
    Mesh mesh = Mesh::uniform(8);
    NodalFunction z(mesh, {0.0, 1.0, -1.0, 1.0, 1.0, 1.0, 1e-18, 1.0, 0.0});
    std::vector<double> roots = find_interior_roots(z);
    std::vector<RootSlopeReport> diag = structural_diagnostics(z, roots);
    REQUIRE(diag.size() == 3);
    CHECK(diag[0].cluster_warning);  // two interpolated roots 0.25 apart < 3h
    CHECK(!diag[0].low_slope_warning);
    CHECK(!diag[2].cluster_warning);
}
