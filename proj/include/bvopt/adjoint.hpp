#ifndef BVOPT_ADJOINT_HPP
#define BVOPT_ADJOINT_HPP

#include <string>
#include <vector>

#include "bvopt/fem.hpp"
#include "bvopt/jump_control.hpp"
#include "bvopt/mesh.hpp"
#include "bvopt/problem.hpp"

namespace bvopt {

enum class Scheme { variational, full };

// Exact antiderivative Phi(x) = int_0^x z_h of a piecewise-linear adjoint.
// Piecewise quadratic; nodal values accumulated by exact trapezoids.
class PhiFunction {
public:
    explicit PhiFunction(const NodalFunction& z);

    const Mesh& mesh() const { return *mesh_; }
    double at_node(std::size_t j) const { return cumulative_[j]; }
    double operator()(double x) const;
    double at_one() const { return cumulative_.back(); }

private:
    const Mesh* mesh_;
    std::vector<double> z_values_;
    std::vector<double> cumulative_;
};

struct OptimalityReport {
    double phi_at_one = 0.0;              // |Phi(1)|
    double max_abs_phi_at_jumps = 0.0;    // max over nonzero jumps of ||Phi(t)| - alpha|
    double nodal_phi_bound_violation = 0.0; // full scheme: max_j (|Phi(x_j)| - alpha)_+
    double phi_sup_sampled = 0.0;         // max |Phi| over 20 samples per element
    int sign_mismatches = 0;
    double kkt_residual = 0.0;

    std::string to_json() const;
};

// Discrete adjoint: z_h solves a(w_h, z_h) = (w_h, u_h - u_d).
NodalFunction compute_adjoint(const TridiagonalSystem& sys, const NodalFunction& u_h,
                              const ProblemSpec& spec, int quad_order = kDefaultQuadOrder);

struct RootTolerances {
    double zero;  // |z_j| <= zero counts a node as a root
    double merge; // dedup distance
};

RootTolerances default_root_tolerances(const NodalFunction& z);

// Interior roots of the piecewise-linear z_h: near-zero interior nodes plus
// within-element sign changes, deduplicated, boundary excluded.
std::vector<double> find_interior_roots(const NodalFunction& z, double tol_zero,
                                        double tol_merge);
std::vector<double> find_interior_roots(const NodalFunction& z);

OptimalityReport optimality_report(const JumpControl& q, const NodalFunction& z,
                                   double alpha, Scheme scheme,
                                   double kkt_residual = 0.0);

// Largest sampled |Phi| over equispaced points (includes endpoints).
double phi_sup_sample(const PhiFunction& phi, int samples);

struct RootSlopeReport {
    double root;
    double slope_left;
    double slope_right;
    bool low_slope_warning;
    bool cluster_warning;
};

// One-sided adjoint slopes at each root; flags near-flat roots and clusters
// separated by less than 3 local element widths.
std::vector<RootSlopeReport> structural_diagnostics(const NodalFunction& z,
                                                    const std::vector<double>& roots,
                                                    double threshold = 1e-6);

} // namespace bvopt

#endif
