#ifndef BVOPT_SUBPROBLEM_HPP
#define BVOPT_SUBPROBLEM_HPP

#include <vector>

#include "bvopt/fem.hpp"
#include "bvopt/jump_control.hpp"
#include "bvopt/mesh.hpp"
#include "bvopt/problem.hpp"

namespace bvopt {

struct SolverFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reduced data of the inner problem at fixed candidate jump points t:
//   min over w=(a, c)  1/2 w^T G w - b^T w + const_term + alpha * sum |c_i|
// with G_ij = (S_h g_i, S_h g_j), b_i = (u_d, S_h g_i), g_0 = 1, g_i = 1_(t_i,1).
struct GramSystem {
    std::vector<std::vector<double>> G; // (m+1) x (m+1), symmetric
    std::vector<double> b;
    double const_term = 0.0; // 1/2 ||u_d||^2 (quadrature)
    std::vector<double> points;
    std::vector<NodalFunction> images; // y_i = S_h g_i, cached

    std::size_t dim() const { return b.size(); }
};

struct SubproblemSolution {
    double offset = 0.0;
    std::vector<double> coeffs;
    int iterations = 0;
    bool converged = false;
    bool fallback_used = false;
    double fixed_point_residual = 0.0;
};

GramSystem assemble_gram(const Mesh& mesh, const TridiagonalSystem& sys,
                         const std::vector<double>& points, const ProblemSpec& spec,
                         int quad_order = kDefaultQuadOrder);

inline double shrink(double x, double tau)
{
    double m = std::abs(x) - tau;
    return m > 0.0 ? (x > 0.0 ? m : -m) : 0.0;
}

// Value of the reduced objective at (offset, coeffs).
double subproblem_objective(const GramSystem& gram, double alpha, double offset,
                            const std::vector<double>& coeffs);

// Semismooth Newton (active-set) solve of the inner problem; falls back to
// proximal gradient if the active set fails to settle.
SubproblemSolution solve_subproblem_ssn(const GramSystem& gram, double alpha,
                                        double eps_in = 1e-12, int max_iter = 100,
                                        const std::vector<double>* warm_start = nullptr);

// Independent proximal-gradient oracle with step 1/L.
SubproblemSolution solve_subproblem_oracle(const GramSystem& gram, double alpha,
                                           double tol = 1e-12, int max_iter = 2000000);

} // namespace bvopt

#endif
