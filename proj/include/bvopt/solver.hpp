#ifndef BVOPT_SOLVER_HPP
#define BVOPT_SOLVER_HPP

#include <stdexcept>
#include <vector>

#include "bvopt/adjoint.hpp"
#include "bvopt/jump_control.hpp"
#include "bvopt/mesh.hpp"
#include "bvopt/problem.hpp"
#include "bvopt/subproblem.hpp"

namespace bvopt {

struct SolverConfig {
    double eps_in = 1e-12;     // inner fixed-point residual tolerance
    double eps_out = 1e-10;    // outer jump-position tolerance
    int max_outer = 200;
    int max_inner = 100;       // active-set iterations before fallback
    int quad_order = kDefaultQuadOrder;
    bool damping_enabled = true;
    double node_snap_tol = 1e-12; // root counts as a gridpoint within this
};

struct Solution {
    JumpControl control;
    NodalFunction state;
    NodalFunction adjoint;
    Scheme scheme;
    int outer_iterations = 0;
    SubproblemSolution inner; // report of the final inner solve
    OptimalityReport optimality;
};

// Outer iteration ran out of budget; carries the last candidate points.
struct NonConvergence : std::runtime_error {
    NonConvergence(const std::string& msg, std::vector<double> points, int iters)
        : std::runtime_error(msg), last_points(std::move(points)), outer_iterations(iters)
    {
    }

    std::vector<double> last_points;
    int outer_iterations;
};

// Outer loop with free jump positions: candidate points are the interior
// roots of the adjoint, iterated to a fixed point.
Solution solve_variational(const Mesh& mesh, const ProblemSpec& spec,
                           const SolverConfig& config = {});

// Fully discrete variant: every adjoint root is replaced by the adjacent
// gridpoints and the candidate set is a set of interior nodes.
Solution solve_full_discrete(const Mesh& mesh, const ProblemSpec& spec,
                             const SolverConfig& config = {});

// Midpoint damping of the position update, exposed for tests.
std::vector<double> damped_update(const std::vector<double>& prev,
                                  const std::vector<double>& curr,
                                  const std::vector<double>& next);

} // namespace bvopt

#endif
