#ifndef BVOPT_PROBLEM_HPP
#define BVOPT_PROBLEM_HPP

#include <functional>
#include <stdexcept>

namespace bvopt {

struct CoefficientViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Data of the elliptic control problem: -(a u')' + d0 u = q on (0,1),
// tracking target u_d, regularization weight alpha.
struct ProblemSpec {
    std::function<double(double)> diffusion;      // a(x) >= nu > 0
    std::function<double(double)> reaction;       // d0(x) >= 0
    std::function<double(double)> desired_state;  // u_d(x)
    double alpha = 0.0;
    double nu = 0.0;
    bool constant_coefficients = false; // exact element matrices, no quadrature

    static ProblemSpec constant(double a, double d0,
                                std::function<double(double)> u_d, double alpha)
    {
        ProblemSpec s;
        s.diffusion = [a](double) { return a; };
        s.reaction = [d0](double) { return d0; };
        s.desired_state = std::move(u_d);
        s.alpha = alpha;
        s.nu = a;
        s.constant_coefficients = true;
        if (!(a > 0.0) || d0 < 0.0 || !(alpha > 0.0))
            throw std::invalid_argument("ProblemSpec: need a > 0, d0 >= 0, alpha > 0");
        return s;
    }

    void validate() const
    {
        if (!(nu > 0.0))
            throw std::invalid_argument("ProblemSpec: nu must be positive");
        if (!(alpha > 0.0))
            throw std::invalid_argument("ProblemSpec: alpha must be positive");
    }
};

} // namespace bvopt

#endif
