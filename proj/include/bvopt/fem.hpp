#ifndef BVOPT_FEM_HPP
#define BVOPT_FEM_HPP

#include <functional>
#include <vector>

#include "bvopt/mesh.hpp"
#include "bvopt/problem.hpp"
#include "bvopt/tridiag.hpp"

namespace bvopt {

inline constexpr int kDefaultQuadOrder = 5;

// Stiffness+mass matrix of the bilinear form (a v', w') + (d0 v, w) over
// interior hat functions. Constant-coefficient problems use exact element
// matrices; otherwise per-element Gauss quadrature of the given order.
TridiagonalSystem assemble_system(const Mesh& mesh, const ProblemSpec& spec,
                                  int quad_order = kDefaultQuadOrder);

// Load vector entries (f, phi_j) for interior j, composite Gauss quadrature.
std::vector<double> quadrature_load(const Mesh& mesh,
                                    const std::function<double(double)>& f,
                                    int quad_order = kDefaultQuadOrder);

// Discrete solution operator: u_h in V_h with a(u_h, w_h) = load for all hats.
NodalFunction apply_Sh(const TridiagonalSystem& sys, const std::vector<double>& load,
                       const Mesh& mesh);

// Exact L2 inner product of two V_h members on the same mesh.
double l2_inner(const NodalFunction& u, const NodalFunction& v);

// Exact pairing (u_h, phi_j) for interior j (mass-matrix action).
std::vector<double> mass_pairing(const NodalFunction& u);

namespace serial {
// Reference implementation of quadrature_load without OpenMP; kept for
// bitwise-equality tests and the benchmark.
std::vector<double> quadrature_load(const Mesh& mesh,
                                    const std::function<double(double)>& f,
                                    int quad_order = kDefaultQuadOrder);
} // namespace serial

} // namespace bvopt

#endif
