#ifndef BVOPT_VERIFY_HPP
#define BVOPT_VERIFY_HPP

#include <string>
#include <vector>

namespace bvopt {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Averaging projection onto element-wise constants: TV non-expansive,
// first-order L1 distance bound, orthogonality against hat functions.
std::vector<CheckResult> projection_checks(int trials = 500, unsigned seed = 1);

// Nodal exactness of the discrete solution operator for constant diffusion
// and piecewise-constant right-hand sides.
std::vector<CheckResult> fem_checks(unsigned seed = 3);

// Self-adjointness of the discrete solution operator.
std::vector<CheckResult> symmetry_checks(int trials = 50, unsigned seed = 4);

// Internal consistency of the closed-form benchmark solution.
std::vector<CheckResult> analytic_solution_checks();

// Active-set solver against the proximal-gradient oracle on random reduced
// problems: objective agreement and identical support.
std::vector<CheckResult> subproblem_cross_checks(int trials = 100, unsigned seed = 2);

std::vector<CheckResult> run_verification();

} // namespace bvopt

#endif
