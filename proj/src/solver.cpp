#include "bvopt/solver.hpp"

#include <algorithm>
#include <cmath>

#include "bvopt/fem.hpp"

namespace bvopt {

namespace {

double l2_dist(const std::vector<double>& a, const std::vector<double>& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// State for the current coefficients as a combination of the cached images.
NodalFunction combine_state(const GramSystem& gram, const SubproblemSolution& s)
{
    std::vector<double> vals = gram.images[0].values();
    for (double& v : vals)
        v *= s.offset;
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        const std::vector<double>& yi = gram.images[i + 1].values();
        for (std::size_t j = 0; j < vals.size(); ++j)
            vals[j] += s.coeffs[i] * yi[j];
    }
    return NodalFunction(gram.images[0].mesh(), std::move(vals));
}

JumpControl make_control(const std::vector<double>& points, const SubproblemSolution& s)
{
    std::vector<Jump> jumps;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (s.coeffs[i] != 0.0)
            jumps.push_back({points[i], s.coeffs[i]});
    return JumpControl(s.offset, std::move(jumps));
}

// Carry coefficients from the previous candidate set: each new point takes
// the coefficient of the nearest old point within a few element widths.
std::vector<double> warm_start_map(const std::vector<double>& old_points,
                                   const std::vector<double>& old_w,
                                   const std::vector<double>& new_points, double h_max)
{
    std::vector<double> w(new_points.size() + 1, 0.0);
    w[0] = old_w.empty() ? 0.0 : old_w[0];
    for (std::size_t i = 0; i < new_points.size(); ++i) {
        double best = 3.0 * h_max;
        for (std::size_t k = 0; k < old_points.size(); ++k) {
            const double d = std::abs(new_points[i] - old_points[k]);
            if (d < best) {
                best = d;
                w[i + 1] = old_w[k + 1];
            }
        }
    }
    return w;
}

std::vector<double> pack_w(const SubproblemSolution& s)
{
    std::vector<double> w;
    w.reserve(s.coeffs.size() + 1);
    w.push_back(s.offset);
    w.insert(w.end(), s.coeffs.begin(), s.coeffs.end());
    return w;
}

Solution finish(const GramSystem& gram, const SubproblemSolution& inner,
                const TridiagonalSystem& sys, const ProblemSpec& spec,
                const SolverConfig& config, Scheme scheme, int outer)
{
    JumpControl q = make_control(gram.points, inner);
    NodalFunction u = combine_state(gram, inner);
    NodalFunction z = compute_adjoint(sys, u, spec, config.quad_order);
    Solution sol{std::move(q), std::move(u), std::move(z), scheme, outer, inner, {}};
    sol.optimality = optimality_report(sol.control, sol.adjoint, spec.alpha, scheme,
                                       inner.fixed_point_residual);
    return sol;
}

} // namespace

std::vector<double> damped_update(const std::vector<double>& prev,
                                  const std::vector<double>& curr,
                                  const std::vector<double>& next)
{
    if (prev.size() != curr.size() || curr.size() != next.size())
        return next;
    if (l2_dist(next, curr) < l2_dist(curr, prev))
        return next;
    std::vector<double> out(next.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = 0.5 * (curr[i] + next[i]);
    return out;
}

Solution solve_variational(const Mesh& mesh, const ProblemSpec& spec,
                           const SolverConfig& config)
{
    spec.validate();
    TridiagonalSystem sys = assemble_system(mesh, spec, config.quad_order);

    std::vector<double> t_prev, t, warm;
    bool have_prev = false;
    for (int k = 0; k < config.max_outer; ++k) {
        GramSystem gram = assemble_gram(mesh, sys, t, spec, config.quad_order);
        SubproblemSolution inner = solve_subproblem_ssn(
            gram, spec.alpha, config.eps_in, config.max_inner,
            warm.size() == gram.dim() ? &warm : nullptr);
        NodalFunction u = combine_state(gram, inner);
        NodalFunction z = compute_adjoint(sys, u, spec, config.quad_order);
        std::vector<double> roots = find_interior_roots(z);

        if (roots.size() == t.size() && l2_dist(roots, t) <= config.eps_out)
            return finish(gram, inner, sys, spec, config, Scheme::variational, k + 1);

        std::vector<double> t_next = roots;
        if (config.damping_enabled && have_prev)
            t_next = damped_update(t_prev, t, roots);

        warm = warm_start_map(t, pack_w(inner), t_next, mesh.max_width());
        t_prev = t;
        t = std::move(t_next);
        have_prev = true;
    }
    throw NonConvergence("solve_variational: outer iteration budget exhausted", t,
                         config.max_outer);
}

namespace {

// Interior node indices adjacent to each root; a root sitting on a gridpoint
// (within the snap tolerance) contributes only that node.
std::vector<std::size_t> nodes_of_roots(const Mesh& mesh, const std::vector<double>& roots,
                                        double snap_tol)
{
    const std::size_t l = mesh.element_count();
    std::vector<std::size_t> idx;
    for (double r : roots) {
        const std::size_t i = mesh.element_of(r);
        if (std::abs(r - mesh.node(i)) <= snap_tol) {
            if (i >= 1 && i <= l - 1)
                idx.push_back(i);
        } else if (std::abs(r - mesh.node(i + 1)) <= snap_tol) {
            if (i + 1 >= 1 && i + 1 <= l - 1)
                idx.push_back(i + 1);
        } else {
            if (i >= 1)
                idx.push_back(i);
            if (i + 1 <= l - 1)
                idx.push_back(i + 1);
        }
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return idx;
}

} // namespace

Solution solve_full_discrete(const Mesh& mesh, const ProblemSpec& spec,
                             const SolverConfig& config)
{
    spec.validate();
    TridiagonalSystem sys = assemble_system(mesh, spec, config.quad_order);

    std::vector<std::size_t> idx, idx_prev;
    std::vector<double> t, roots_prev, warm;
    bool have_prev = false;
    for (int k = 0; k < config.max_outer; ++k) {
        GramSystem gram = assemble_gram(mesh, sys, t, spec, config.quad_order);
        SubproblemSolution inner = solve_subproblem_ssn(
            gram, spec.alpha, config.eps_in, config.max_inner,
            warm.size() == gram.dim() ? &warm : nullptr);
        NodalFunction u = combine_state(gram, inner);
        NodalFunction z = compute_adjoint(sys, u, spec, config.quad_order);
        std::vector<double> roots = find_interior_roots(z);

        if (config.damping_enabled && have_prev)
            roots = damped_update(roots_prev, t, roots);

        std::vector<std::size_t> idx_next = nodes_of_roots(mesh, roots, config.node_snap_tol);
        if (idx_next == idx)
            return finish(gram, inner, sys, spec, config, Scheme::full, k + 1);

        std::vector<double> t_next(idx_next.size());
        for (std::size_t i = 0; i < idx_next.size(); ++i)
            t_next[i] = mesh.node(idx_next[i]);

        warm = warm_start_map(t, pack_w(inner), t_next, mesh.max_width());
        idx_prev = idx;
        idx = std::move(idx_next);
        roots_prev = t;
        t = std::move(t_next);
        have_prev = true;
    }
    throw NonConvergence("solve_full_discrete: outer iteration budget exhausted", t,
                         config.max_outer);
}

} // namespace bvopt
