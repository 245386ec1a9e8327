#ifndef BVOPT_MODEL_PROBLEMS_HPP
#define BVOPT_MODEL_PROBLEMS_HPP

#include <functional>
#include <string>
#include <vector>

#include "bvopt/jump_control.hpp"
#include "bvopt/problem.hpp"

namespace bvopt {

// Closed-form optimal triple of a benchmark problem, where available.
struct ExactSolution {
    JumpControl control;
    std::function<double(double)> state;
    std::function<double(double)> adjoint;
    std::function<double(double)> adjoint_prime;
    std::function<double(double)> phi; // int_0^x adjoint
    std::vector<double> breakpoints;   // kinks of the state / control jumps
};

struct ModelProblem {
    std::string name;
    ProblemSpec spec;
    bool has_exact = false;
    ExactSolution exact;
};

// Poisson problem with a manufactured optimal control with three jumps;
// the full optimal triple is known in closed form.
ModelProblem example1();

// Smooth tracking target 0.5/pi^2 * (1 - cos(2 pi x)); no closed-form
// solution, studies compare against a fine-mesh reference.
ModelProblem example2();

ModelProblem model_problem_by_name(const std::string& name);

} // namespace bvopt

#endif
