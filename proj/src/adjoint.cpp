#include "bvopt/adjoint.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace bvopt {

PhiFunction::PhiFunction(const NodalFunction& z)
    : mesh_(&z.mesh()), z_values_(z.values()), cumulative_(z.mesh().node_count(), 0.0)
{
    for (std::size_t j = 0; j + 1 < cumulative_.size(); ++j)
        cumulative_[j + 1] =
            cumulative_[j] + mesh_->width(j) * 0.5 * (z_values_[j] + z_values_[j + 1]);
}

double PhiFunction::operator()(double x) const
{
    const std::size_t i = mesh_->element_of(x);
    const double x0 = mesh_->node(i);
    const double h = mesh_->width(i);
    const double d = x - x0;
    const double z0 = z_values_[i];
    const double z1 = z_values_[i + 1];
    return cumulative_[i] + z0 * d + (z1 - z0) * d * d / (2.0 * h);
}

std::string OptimalityReport::to_json() const
{
    nlohmann::json out;
    out["phi_at_one"] = phi_at_one;
    out["max_abs_phi_at_jumps"] = max_abs_phi_at_jumps;
    out["nodal_phi_bound_violation"] = nodal_phi_bound_violation;
    out["phi_sup_sampled"] = phi_sup_sampled;
    out["sign_mismatches"] = sign_mismatches;
    out["kkt_residual"] = kkt_residual;
    return out.dump(2);
}

NodalFunction compute_adjoint(const TridiagonalSystem& sys, const NodalFunction& u_h,
                              const ProblemSpec& spec, int quad_order)
{
    std::vector<double> rhs = mass_pairing(u_h);
    std::vector<double> ud_load = quadrature_load(u_h.mesh(), spec.desired_state, quad_order);
    for (std::size_t i = 0; i < rhs.size(); ++i)
        rhs[i] -= ud_load[i];
    return apply_Sh(sys, rhs, u_h.mesh());
}

RootTolerances default_root_tolerances(const NodalFunction& z)
{
    double zmax = 0.0;
    for (double v : z.values())
        zmax = std::max(zmax, std::abs(v));
    return {1e-12 * zmax, std::max(1e-10, z.mesh().max_width() * 1e-6)};
}

std::vector<double> find_interior_roots(const NodalFunction& z, double tol_zero,
                                        double tol_merge)
{
    if (!(tol_zero >= 0.0) || !(tol_merge > 0.0))
        throw std::invalid_argument("find_interior_roots: bad tolerances");
    const Mesh& mesh = z.mesh();
    const std::size_t l = mesh.element_count();
    std::vector<double> roots;
    for (std::size_t j = 1; j < l; ++j)
        if (std::abs(z.value(j)) <= tol_zero)
            roots.push_back(mesh.node(j));
    for (std::size_t i = 0; i < l; ++i) {
        const double za = z.value(i), zb = z.value(i + 1);
        if (za * zb < 0.0 && std::abs(za) > tol_zero && std::abs(zb) > tol_zero)
            roots.push_back(mesh.node(i) + mesh.width(i) * za / (za - zb));
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double r : roots) {
        if (!out.empty() && r - out.back() < tol_merge)
            continue;
        out.push_back(r);
    }
    return out;
}

std::vector<double> find_interior_roots(const NodalFunction& z)
{
    RootTolerances tol = default_root_tolerances(z);
    return find_interior_roots(z, tol.zero, tol.merge);
}

OptimalityReport optimality_report(const JumpControl& q, const NodalFunction& z,
                                   double alpha, Scheme scheme, double kkt_residual)
{
    PhiFunction phi(z);
    OptimalityReport rep;
    rep.kkt_residual = kkt_residual;
    rep.phi_at_one = std::abs(phi.at_one());
    for (const Jump& j : q.jumps()) {
        if (j.height == 0.0)
            continue;
        const double p = phi(j.position);
        rep.max_abs_phi_at_jumps =
            std::max(rep.max_abs_phi_at_jumps, std::abs(std::abs(p) - alpha));
        // A positive jump requires Phi near +alpha, a negative one near -alpha.
        if ((j.height > 0.0 ? p : -p) < 0.5 * alpha)
            ++rep.sign_mismatches;
    }
    if (scheme == Scheme::full) {
        const Mesh& mesh = z.mesh();
        for (std::size_t j = 0; j < mesh.node_count(); ++j)
            rep.nodal_phi_bound_violation = std::max(
                rep.nodal_phi_bound_violation, std::abs(phi.at_node(j)) - alpha);
        rep.nodal_phi_bound_violation = std::max(rep.nodal_phi_bound_violation, 0.0);
    }
    rep.phi_sup_sampled =
        phi_sup_sample(phi, static_cast<int>(z.mesh().element_count()) * 20);
    return rep;
}

double phi_sup_sample(const PhiFunction& phi, int samples)
{
    double sup = 0.0;
    for (int k = 0; k <= samples; ++k)
        sup = std::max(sup, std::abs(phi(static_cast<double>(k) / samples)));
    return sup;
}

std::vector<RootSlopeReport> structural_diagnostics(const NodalFunction& z,
                                                    const std::vector<double>& roots,
                                                    double threshold)
{
    const Mesh& mesh = z.mesh();
    std::vector<RootSlopeReport> out;
    for (std::size_t k = 0; k < roots.size(); ++k) {
        const double r = roots[k];
        std::size_t i = mesh.element_of(r);
        double sl, sr;
        if (r == mesh.node(i) && i > 0) {
            sl = z.slope(i - 1);
            sr = z.slope(i);
        } else if (r == mesh.node(i + 1)) {
            sl = z.slope(i);
            sr = (i + 1 < mesh.element_count()) ? z.slope(i + 1) : z.slope(i);
        } else {
            sl = sr = z.slope(i);
        }
        RootSlopeReport rep{r, sl, sr, false, false};
        rep.low_slope_warning = std::min(std::abs(sl), std::abs(sr)) < threshold;
        const double sep_scale = 3.0 * mesh.width(i);
        if (k > 0 && r - roots[k - 1] < sep_scale)
            rep.cluster_warning = true;
        if (k + 1 < roots.size() && roots[k + 1] - r < sep_scale)
            rep.cluster_warning = true;
        out.push_back(rep);
    }
    return out;
}

} // namespace bvopt
