#include "bvopt/subproblem.hpp"

#include <algorithm>
#include <cmath>

#include "bvopt/quadrature.hpp"

namespace bvopt {

namespace {

// Integral of u_d against a V_h member, per-element Gauss quadrature.
double pair_with_ud(const NodalFunction& y, const ProblemSpec& spec, int quad_order)
{
    const Mesh& mesh = y.mesh();
    double sum = 0.0;
    for (std::size_t i = 0; i < mesh.element_count(); ++i) {
        const double x0 = mesh.node(i);
        const double x1 = mesh.node(i + 1);
        sum += gauss_integrate(
            [&](double x) {
                const double t = (x - x0) / (x1 - x0);
                const double yv = y.value(i) + t * (y.value(i + 1) - y.value(i));
                return spec.desired_state(x) * yv;
            },
            x0, x1, quad_order);
    }
    return sum;
}

// Solve the symmetric positive definite subsystem by Cholesky; returns false
// on a non-positive pivot.
bool cholesky_solve(std::vector<std::vector<double>> A, std::vector<double> rhs,
                    std::vector<double>& out)
{
    const std::size_t n = rhs.size();
    for (std::size_t j = 0; j < n; ++j) {
        double d = A[j][j];
        for (std::size_t k = 0; k < j; ++k)
            d -= A[j][k] * A[j][k];
        if (!(d > 0.0))
            return false;
        A[j][j] = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = A[i][j];
            for (std::size_t k = 0; k < j; ++k)
                s -= A[i][k] * A[j][k];
            A[i][j] = s / A[j][j];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        double s = rhs[i];
        for (std::size_t k = 0; k < i; ++k)
            s -= A[i][k] * rhs[k];
        rhs[i] = s / A[i][i];
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = rhs[i];
        for (std::size_t k = i + 1; k < n; ++k)
            s -= A[k][i] * rhs[k];
        rhs[i] = s / A[i][i];
    }
    out = std::move(rhs);
    return true;
}

std::vector<double> mat_vec(const std::vector<std::vector<double>>& G,
                            const std::vector<double>& w)
{
    const std::size_t n = w.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out[i] += G[i][j] * w[j];
    return out;
}

double prox_step_size(const GramSystem& gram)
{
    double d = 0.0;
    for (std::size_t i = 0; i < gram.dim(); ++i)
        d = std::max(d, gram.G[i][i]);
    return 1.0 / d;
}

// Apply the prox map P: soft-threshold jump coefficients, identity on the
// offset (index 0).
std::vector<double> prox(const std::vector<double>& v, double tau)
{
    std::vector<double> out(v.size());
    out[0] = v[0];
    for (std::size_t i = 1; i < v.size(); ++i)
        out[i] = shrink(v[i], tau);
    return out;
}

double fixed_point_residual(const GramSystem& gram, double alpha, double gamma,
                            const std::vector<double>& w)
{
    std::vector<double> g = mat_vec(gram.G, w);
    std::vector<double> v(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        v[i] = w[i] - gamma * (g[i] - gram.b[i]);
    std::vector<double> p = prox(v, gamma * alpha);
    double r = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
        r = std::max(r, std::abs(w[i] - p[i]));
    return r;
}

SubproblemSolution pack(const std::vector<double>& w, int iters, bool conv, double res,
                        bool fallback)
{
    SubproblemSolution sol;
    sol.offset = w[0];
    sol.coeffs.assign(w.begin() + 1, w.end());
    sol.iterations = iters;
    sol.converged = conv;
    sol.fixed_point_residual = res;
    sol.fallback_used = fallback;
    return sol;
}

// Largest-eigenvalue bound of G by power iteration, padded for safety.
double lipschitz_bound(const GramSystem& gram)
{
    const std::size_t n = gram.dim();
    std::vector<double> v(n, 1.0);
    double lambda = 0.0;
    for (int it = 0; it < 200; ++it) {
        std::vector<double> gv = mat_vec(gram.G, v);
        double norm = 0.0;
        for (double x : gv)
            norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0)
            break;
        lambda = norm;
        for (std::size_t i = 0; i < n; ++i)
            v[i] = gv[i] / norm;
    }
    return lambda * 1.05;
}

// Accelerated proximal gradient with gradient-based restart, from a given
// start; shared by the oracle and the SSN fallback path.
std::vector<double> prox_gradient(const GramSystem& gram, double alpha, double tol,
                                  int max_iter, std::vector<double> w, int& iters,
                                  bool& converged)
{
    const std::size_t n = gram.dim();
    const double lip = lipschitz_bound(gram);
    const double step = lip > 0.0 ? 1.0 / lip : 1.0;
    const double gamma_fp = prox_step_size(gram);
    std::vector<double> y = w;
    double theta = 1.0;
    converged = false;
    for (iters = 0; iters < max_iter; ++iters) {
        std::vector<double> g = mat_vec(gram.G, y);
        std::vector<double> u(n);
        for (std::size_t i = 0; i < n; ++i)
            u[i] = y[i] - step * (g[i] - gram.b[i]);
        std::vector<double> w_next = prox(u, step * alpha);

        // Restart the momentum when it points against the descent direction.
        double cross = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            cross += (y[i] - w_next[i]) * (w_next[i] - w[i]);
        double theta_next;
        if (cross > 0.0) {
            theta_next = 1.0;
            y = w_next;
        } else {
            theta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
            const double momentum = (theta - 1.0) / theta_next;
            y.resize(n);
            for (std::size_t i = 0; i < n; ++i)
                y[i] = w_next[i] + momentum * (w_next[i] - w[i]);
        }
        w = std::move(w_next);
        theta = theta_next;
        if (fixed_point_residual(gram, alpha, gamma_fp, w) <= tol) {
            converged = true;
            ++iters;
            break;
        }
    }
    return w;
}

} // namespace

GramSystem assemble_gram(const Mesh& mesh, const TridiagonalSystem& sys,
                         const std::vector<double>& points, const ProblemSpec& spec,
                         int quad_order)
{
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i] > 0.0) || !(points[i] < 1.0))
            throw std::invalid_argument("assemble_gram: points must lie in (0,1)");
        if (i > 0 && points[i] - points[i - 1] < JumpControl::kMergeTol)
            throw std::invalid_argument("assemble_gram: duplicate candidate points");
    }
    GramSystem gram;
    gram.points = points;
    const std::size_t n = points.size() + 1;
    gram.images.reserve(n);
    gram.images.push_back(apply_Sh(sys, load_of_jump_control(mesh, JumpControl(1.0)), mesh));
    for (double t : points) {
        JumpControl step(0.0, {{t, 1.0}});
        gram.images.push_back(apply_Sh(sys, load_of_jump_control(mesh, step), mesh));
    }
    gram.G.assign(n, std::vector<double>(n, 0.0));
    gram.b.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double v = l2_inner(gram.images[i], gram.images[j]);
            gram.G[i][j] = v;
            gram.G[j][i] = v;
        }
        gram.b[i] = pair_with_ud(gram.images[i], spec, quad_order);
    }
    double udsq = 0.0;
    for (std::size_t i = 0; i < mesh.element_count(); ++i)
        udsq += gauss_integrate(
            [&](double x) {
                const double u = spec.desired_state(x);
                return u * u;
            },
            mesh.node(i), mesh.node(i + 1), quad_order);
    gram.const_term = 0.5 * udsq;
    return gram;
}

double subproblem_objective(const GramSystem& gram, double alpha, double offset,
                            const std::vector<double>& coeffs)
{
    std::vector<double> w(gram.dim());
    w[0] = offset;
    std::copy(coeffs.begin(), coeffs.end(), w.begin() + 1);
    std::vector<double> g = mat_vec(gram.G, w);
    double quad = 0.0, lin = 0.0, l1 = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        quad += w[i] * g[i];
        lin += gram.b[i] * w[i];
    }
    for (double c : coeffs)
        l1 += std::abs(c);
    return 0.5 * quad - lin + gram.const_term + alpha * l1;
}

SubproblemSolution solve_subproblem_ssn(const GramSystem& gram, double alpha,
                                        double eps_in, int max_iter,
                                        const std::vector<double>* warm_start)
{
    if (!(eps_in > 0.0))
        throw std::invalid_argument("solve_subproblem_ssn: eps_in must be positive");
    const std::size_t n = gram.dim();
    const double gamma = prox_step_size(gram);
    std::vector<double> w(n, 0.0);
    if (warm_start) {
        if (warm_start->size() != n)
            throw std::invalid_argument("solve_subproblem_ssn: warm start size mismatch");
        w = *warm_start;
    }
    double res = fixed_point_residual(gram, alpha, gamma, w);
    if (res <= eps_in)
        return pack(w, 0, true, res, false);

    auto objective = [&gram, alpha](const std::vector<double>& v) {
        return subproblem_objective(gram, alpha, v[0],
                                    std::vector<double>(v.begin() + 1, v.end()));
    };
    const double lip = lipschitz_bound(gram);
    const double safe_step = lip > 0.0 ? 1.0 / lip : 1.0;
    double fcur = objective(w);

    for (int it = 1; it <= max_iter; ++it) {
        std::vector<double> g = mat_vec(gram.G, w);
        // Active set from the prox argument; the offset is always active.
        std::vector<std::size_t> active{0};
        std::vector<double> sign{0.0};
        for (std::size_t i = 1; i < n; ++i) {
            const double v = w[i] - gamma * (g[i] - gram.b[i]);
            if (std::abs(v) > gamma * alpha) {
                active.push_back(i);
                sign.push_back(v > 0.0 ? 1.0 : -1.0);
            }
        }
        const std::size_t na = active.size();
        std::vector<std::vector<double>> A(na, std::vector<double>(na));
        std::vector<double> rhs(na);
        for (std::size_t r = 0; r < na; ++r) {
            for (std::size_t c = 0; c < na; ++c)
                A[r][c] = gram.G[active[r]][active[c]];
            rhs[r] = gram.b[active[r]] - alpha * sign[r];
        }
        std::vector<double> sol;
        if (!cholesky_solve(A, rhs, sol)) {
            for (std::size_t r = 0; r < na; ++r)
                A[r][r] += 1e-14;
            if (!cholesky_solve(A, rhs, sol))
                throw SolverFailure("solve_subproblem_ssn: singular active-set system");
        }
        std::vector<double> cand(n, 0.0);
        for (std::size_t r = 0; r < na; ++r)
            cand[active[r]] = sol[r];

        // Safeguard: only take the Newton point if it does not increase the
        // objective; otherwise fall back to a single prox-gradient step, which
        // decreases it monotonically and prevents active-set cycling.
        const double fcand = objective(cand);
        if (fcand <= fcur + 1e-14 * (std::abs(fcur) + 1.0)) {
            w = std::move(cand);
            fcur = fcand;
        } else {
            std::vector<double> u(n);
            for (std::size_t i = 0; i < n; ++i)
                u[i] = w[i] - safe_step * (g[i] - gram.b[i]);
            w = prox(u, safe_step * alpha);
            fcur = objective(w);
        }
        res = fixed_point_residual(gram, alpha, gamma, w);
        if (res <= eps_in)
            return pack(w, it, true, res, false);
    }

    // Active set failed to settle; finish with the guaranteed-convergent path.
    int extra = 0;
    bool conv = false;
    w = prox_gradient(gram, alpha, eps_in, 2000000, w, extra, conv);
    res = fixed_point_residual(gram, alpha, gamma, w);
    if (!conv)
        throw SolverFailure("solve_subproblem_ssn: fallback did not converge");
    return pack(w, max_iter + extra, true, res, true);
}

SubproblemSolution solve_subproblem_oracle(const GramSystem& gram, double alpha,
                                           double tol, int max_iter)
{
    if (!(tol > 0.0))
        throw std::invalid_argument("solve_subproblem_oracle: tol must be positive");
    int iters = 0;
    bool conv = false;
    std::vector<double> w = prox_gradient(gram, alpha, tol, max_iter,
                                          std::vector<double>(gram.dim(), 0.0), iters, conv);
    return pack(w, iters, conv, fixed_point_residual(gram, alpha, prox_step_size(gram), w),
                false);
}

} // namespace bvopt
