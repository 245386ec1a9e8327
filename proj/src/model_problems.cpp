#include "bvopt/model_problems.hpp"

#include <cmath>
#include <stdexcept>

namespace bvopt {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Piecewise-quadratic solution of -u'' = q, u(0) = u(1) = 0 for a
// piecewise-constant q: on each segment u = -v x^2/2 + A x + B, with A, B
// propagated by continuity of value and slope at the breakpoints.
struct PiecewiseQuadratic {
    std::vector<double> breaks; // interior breakpoints, sorted
    std::vector<double> v;      // one per segment (breaks.size() + 1)
    std::vector<double> A, B;

    explicit PiecewiseQuadratic(const JumpControl& q)
    {
        v.push_back(q.offset());
        for (const Jump& j : q.jumps()) {
            breaks.push_back(j.position);
            v.push_back(v.back() + j.height);
        }
        const std::size_t n = v.size();
        A.assign(n, 0.0);
        B.assign(n, 0.0);
        for (std::size_t k = 0; k + 1 < n; ++k) {
            const double t = breaks[k];
            const double dv = v[k + 1] - v[k];
            A[k + 1] = A[k] + dv * t;
            B[k + 1] = B[k] - dv * t * t / 2.0;
        }
        // A so far holds the increments over A[0]; fix A[0] from u(1) = 0.
        const double a0 = v[n - 1] / 2.0 - B[n - 1] - A[n - 1];
        for (std::size_t k = 0; k < n; ++k)
            A[k] += a0;
    }

    std::size_t segment(double x) const
    {
        std::size_t k = 0;
        while (k < breaks.size() && x >= breaks[k])
            ++k;
        return k;
    }

    double operator()(double x) const
    {
        const std::size_t k = segment(x);
        return -v[k] * x * x / 2.0 + A[k] * x + B[k];
    }
};

} // namespace

ModelProblem example1()
{
    const double alpha = 1e-5;
    const double c = 12.0 - 8.0 * std::sqrt(2.0);
    const double xc = std::acos(c / 4.0) / (2.0 * kPi);

    JumpControl qbar(0.5, {{xc, 1.0}, {0.5, -2.0}, {1.0 - xc, 1.5}});
    PiecewiseQuadratic ubar(qbar);

    auto phi = [alpha, c](double x) {
        return alpha / (2.0 * c) *
               ((1.0 - std::cos(4.0 * kPi * x)) - c * (1.0 - std::cos(2.0 * kPi * x)));
    };
    auto zbar = [alpha, c](double x) {
        return alpha / (2.0 * c) *
               (4.0 * kPi * std::sin(4.0 * kPi * x) - 2.0 * kPi * c * std::sin(2.0 * kPi * x));
    };
    auto zbar_prime = [alpha, c](double x) {
        return alpha / (2.0 * c) *
               (16.0 * kPi * kPi * std::cos(4.0 * kPi * x) -
                4.0 * kPi * kPi * c * std::cos(2.0 * kPi * x));
    };
    auto zbar_pp = [alpha, c](double x) {
        return alpha / (2.0 * c) *
               (-64.0 * kPi * kPi * kPi * std::sin(4.0 * kPi * x) +
                8.0 * kPi * kPi * kPi * c * std::sin(2.0 * kPi * x));
    };
    // The adjoint equation -z'' = u - u_d pins down the target.
    auto u_d = [ubar, zbar_pp](double x) { return ubar(x) + zbar_pp(x); };

    ModelProblem mp;
    mp.name = "example1";
    mp.spec = ProblemSpec::constant(1.0, 0.0, u_d, alpha);
    mp.has_exact = true;
    mp.exact.control = qbar;
    mp.exact.state = [ubar](double x) { return ubar(x); };
    mp.exact.adjoint = zbar;
    mp.exact.adjoint_prime = zbar_prime;
    mp.exact.phi = phi;
    mp.exact.breakpoints = {xc, 0.5, 1.0 - xc};
    return mp;
}

ModelProblem example2()
{
    auto u_d = [](double x) {
        return 0.5 / (kPi * kPi) * (1.0 - std::cos(2.0 * kPi * x));
    };
    ModelProblem mp;
    mp.name = "example2";
    mp.spec = ProblemSpec::constant(1.0, 0.0, u_d, 1e-5);
    mp.has_exact = false;
    return mp;
}

ModelProblem model_problem_by_name(const std::string& name)
{
    if (name == "example1")
        return example1();
    if (name == "example2")
        return example2();
    throw std::invalid_argument("unknown model problem: " + name);
}

} // namespace bvopt
