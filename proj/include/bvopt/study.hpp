#ifndef BVOPT_STUDY_HPP
#define BVOPT_STUDY_HPP

#include <functional>
#include <string>
#include <vector>

#include "bvopt/model_problems.hpp"
#include "bvopt/solver.hpp"

namespace bvopt {

// L2 error of a V_h member against a reference function; elements are split
// at the listed breakpoints so kinks never sit inside a quadrature panel.
double state_error_L2(const NodalFunction& u, const std::function<double(double)>& exact,
                      const std::vector<double>& breakpoints,
                      int quad_order = kDefaultQuadOrder);

// Sampled sup error over equispaced points within each element.
double sup_error(const NodalFunction& z, const std::function<double(double)>& exact,
                 int samples_per_element = 20);

// Sampled sup error of the broken derivative (element midpoint-biased
// samples, element slope is constant).
double grad_sup_error(const NodalFunction& z,
                      const std::function<double(double)>& exact_prime,
                      int samples_per_element = 20);

namespace serial {
double state_error_L2(const NodalFunction& u, const std::function<double(double)>& exact,
                      const std::vector<double>& breakpoints,
                      int quad_order = kDefaultQuadOrder);
} // namespace serial

struct StudyConfig {
    int k_min = 4;  // coarsest level, n = 2^k - 1 elements
    int k_max = 9;
    int k_ref = 14; // reference level when no closed-form solution exists
    int jobs = 1;
    SolverConfig solver;
};

enum class Metric { q_L1, q_L2, u_L2, z_Linf, z_grad_Linf };

struct LevelResult {
    int k = 0;
    int n = 0;
    double h = 0.0;
    double e_q_L1 = 0.0;
    double e_q_L2 = 0.0;
    double e_u_L2 = 0.0;
    double e_z_Linf = 0.0;
    double e_z_grad_Linf = 0.0;
    int outer_iterations = 0;
    bool inner_fallback_used = false;
    OptimalityReport optimality;
};

struct StudyReport {
    std::string problem;
    Scheme scheme = Scheme::variational;
    std::vector<LevelResult> levels;
    bool has_reference = false; // errors measured against a fine-mesh run
    int k_ref = 0;
    JumpControl reference_control;

    std::string to_csv() const;
    std::string to_json() const;
};

double metric_value(const LevelResult& level, Metric m);

// Least-squares slope of log(error) against log(h) over levels
// [first, last], inclusive indices into report.levels.
double regression_slope(const StudyReport& report, Metric m, std::size_t first,
                        std::size_t last);

StudyReport run_study(const ModelProblem& problem, Scheme scheme,
                      const StudyConfig& config = {});

const char* scheme_name(Scheme scheme);

} // namespace bvopt

#endif
