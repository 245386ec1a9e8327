#include "bvopt/fem.hpp"

#include <cmath>

#include "bvopt/quadrature.hpp"

namespace bvopt {

TridiagonalSystem assemble_system(const Mesh& mesh, const ProblemSpec& spec, int quad_order)
{
    spec.validate();
    if (quad_order < 1)
        throw std::invalid_argument("assemble_system: quad_order must be >= 1");

    const std::size_t l = mesh.element_count();
    // Element matrices accumulated into interior-node storage. Node j is
    // interior for j = 1..l-1; matrix index j-1.
    std::vector<double> main(mesh.interior_count(), 0.0);
    std::vector<double> off(mesh.interior_count() - 1, 0.0);

    auto add = [&](std::size_t node_a, std::size_t node_b, double value) {
        if (node_a == 0 || node_a == l || node_b == 0 || node_b == l)
            return;
        if (node_a == node_b)
            main[node_a - 1] += value;
        else
            off[std::min(node_a, node_b) - 1] += value;
    };

    for (std::size_t i = 0; i < l; ++i) {
        const double x0 = mesh.node(i);
        const double x1 = mesh.node(i + 1);
        const double h = x1 - x0;
        double k00, k01, k11, m00, m01, m11;
        if (spec.constant_coefficients) {
            const double a = spec.diffusion(x0);
            const double d0 = spec.reaction(x0);
            k00 = k11 = a / h;
            k01 = -a / h;
            m00 = m11 = d0 * h / 3.0;
            m01 = d0 * h / 6.0;
        } else {
            const GaussRule& rule = gauss_rule(quad_order);
            k00 = k01 = k11 = m00 = m01 = m11 = 0.0;
            for (std::size_t g = 0; g < rule.points.size(); ++g) {
                const double x = 0.5 * (x0 + x1) + 0.5 * h * rule.points[g];
                const double w = 0.5 * h * rule.weights[g];
                const double a = spec.diffusion(x);
                const double d0 = spec.reaction(x);
                if (a < spec.nu)
                    throw CoefficientViolation("assemble_system: diffusion below nu");
                if (d0 < 0.0)
                    throw CoefficientViolation("assemble_system: negative reaction");
                const double pl = (x1 - x) / h; // left hat
                const double pr = (x - x0) / h; // right hat
                k00 += w * a / (h * h);
                k01 -= w * a / (h * h);
                k11 += w * a / (h * h);
                m00 += w * d0 * pl * pl;
                m01 += w * d0 * pl * pr;
                m11 += w * d0 * pr * pr;
            }
        }
        add(i, i, k00 + m00);
        add(i + 1, i + 1, k11 + m11);
        add(i, i + 1, k01 + m01);
    }
    return TridiagonalSystem(std::move(main), std::move(off));
}

namespace {

double load_entry(const Mesh& mesh, const std::function<double(double)>& f,
                  int quad_order, std::size_t j)
{
    // Hat phi_j is supported on elements j-1 and j.
    const double xl = mesh.node(j - 1);
    const double xj = mesh.node(j);
    const double xr = mesh.node(j + 1);
    const double hl = xj - xl;
    const double hr = xr - xj;
    double v = gauss_integrate([&](double x) { return f(x) * (x - xl) / hl; }, xl, xj, quad_order);
    v += gauss_integrate([&](double x) { return f(x) * (xr - x) / hr; }, xj, xr, quad_order);
    return v;
}

} // namespace

std::vector<double> quadrature_load(const Mesh& mesh, const std::function<double(double)>& f,
                                    int quad_order)
{
    if (quad_order < 1)
        throw std::invalid_argument("quadrature_load: quad_order must be >= 1");
    const std::size_t m = mesh.interior_count();
    std::vector<double> load(m);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 1; j <= static_cast<std::ptrdiff_t>(m); ++j)
        load[j - 1] = load_entry(mesh, f, quad_order, static_cast<std::size_t>(j));
    return load;
}

namespace serial {

std::vector<double> quadrature_load(const Mesh& mesh, const std::function<double(double)>& f,
                                    int quad_order)
{
    const std::size_t m = mesh.interior_count();
    std::vector<double> load(m);
    for (std::size_t j = 1; j <= m; ++j)
        load[j - 1] = load_entry(mesh, f, quad_order, j);
    return load;
}

} // namespace serial

NodalFunction apply_Sh(const TridiagonalSystem& sys, const std::vector<double>& load,
                       const Mesh& mesh)
{
    return NodalFunction::from_interior(mesh, sys.solve(load));
}

double l2_inner(const NodalFunction& u, const NodalFunction& v)
{
    if (!u.mesh().same_as(v.mesh()))
        throw std::invalid_argument("l2_inner: mesh mismatch");
    const Mesh& mesh = u.mesh();
    double sum = 0.0;
    for (std::size_t i = 0; i < mesh.element_count(); ++i) {
        const double h = mesh.width(i);
        const double ua = u.value(i), ub = u.value(i + 1);
        const double va = v.value(i), vb = v.value(i + 1);
        sum += h / 6.0 * (2.0 * ua * va + ua * vb + ub * va + 2.0 * ub * vb);
    }
    return sum;
}

std::vector<double> mass_pairing(const NodalFunction& u)
{
    const Mesh& mesh = u.mesh();
    const std::size_t m = mesh.interior_count();
    std::vector<double> out(m);
    for (std::size_t j = 1; j <= m; ++j) {
        const double hl = mesh.width(j - 1);
        const double hr = mesh.width(j);
        out[j - 1] = hl / 6.0 * (u.value(j - 1) + 2.0 * u.value(j))
                   + hr / 6.0 * (2.0 * u.value(j) + u.value(j + 1));
    }
    return out;
}

} // namespace bvopt
