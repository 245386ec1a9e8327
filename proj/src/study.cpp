#include "bvopt/study.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "bvopt/quadrature.hpp"

namespace bvopt {

namespace {

// Squared L2 error contribution of one element, split at the breakpoints
// falling inside it.
double element_error_sq(const NodalFunction& u, const std::function<double(double)>& exact,
                        const std::vector<double>& breakpoints, std::size_t i,
                        int quad_order)
{
    const Mesh& mesh = u.mesh();
    const double x0 = mesh.node(i);
    const double x1 = mesh.node(i + 1);
    std::vector<double> cuts{x0};
    auto lo = std::upper_bound(breakpoints.begin(), breakpoints.end(), x0);
    for (auto it = lo; it != breakpoints.end() && *it < x1; ++it)
        cuts.push_back(*it);
    cuts.push_back(x1);
    const double v0 = u.value(i), v1 = u.value(i + 1);
    const double h = x1 - x0;
    double sum = 0.0;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s)
        sum += gauss_integrate(
            [&](double x) {
                const double uh = v0 + (x - x0) / h * (v1 - v0);
                const double d = uh - exact(x);
                return d * d;
            },
            cuts[s], cuts[s + 1], quad_order);
    return sum;
}

} // namespace

double state_error_L2(const NodalFunction& u, const std::function<double(double)>& exact,
                      const std::vector<double>& breakpoints, int quad_order)
{
    const std::size_t l = u.mesh().element_count();
    std::vector<double> partial(l);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(l); ++i)
        partial[i] = element_error_sq(u, exact, breakpoints, static_cast<std::size_t>(i),
                                      quad_order);
    double sum = 0.0;
    for (double p : partial)
        sum += p;
    return std::sqrt(sum);
}

namespace serial {

double state_error_L2(const NodalFunction& u, const std::function<double(double)>& exact,
                      const std::vector<double>& breakpoints, int quad_order)
{
    const std::size_t l = u.mesh().element_count();
    std::vector<double> partial(l);
    for (std::size_t i = 0; i < l; ++i)
        partial[i] = element_error_sq(u, exact, breakpoints, i, quad_order);
    double sum = 0.0;
    for (double p : partial)
        sum += p;
    return std::sqrt(sum);
}

} // namespace serial

double sup_error(const NodalFunction& z, const std::function<double(double)>& exact,
                 int samples_per_element)
{
    const Mesh& mesh = z.mesh();
    const std::size_t l = mesh.element_count();
    std::vector<double> partial(l, 0.0);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(l); ++i) {
        const double x0 = mesh.node(i), h = mesh.width(i);
        const double v0 = z.value(i), v1 = z.value(i + 1);
        double m = 0.0;
        for (int s = 0; s <= samples_per_element; ++s) {
            const double t = static_cast<double>(s) / samples_per_element;
            const double x = x0 + t * h;
            m = std::max(m, std::abs(v0 + t * (v1 - v0) - exact(x)));
        }
        partial[i] = m;
    }
    double sup = 0.0;
    for (double p : partial)
        sup = std::max(sup, p);
    return sup;
}

double grad_sup_error(const NodalFunction& z,
                      const std::function<double(double)>& exact_prime,
                      int samples_per_element)
{
    const Mesh& mesh = z.mesh();
    const std::size_t l = mesh.element_count();
    std::vector<double> partial(l, 0.0);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(l); ++i) {
        const double x0 = mesh.node(i), h = mesh.width(i);
        const double s_h = z.slope(i);
        double m = 0.0;
        for (int s = 0; s < samples_per_element; ++s) {
            const double x = x0 + (s + 0.5) / samples_per_element * h;
            m = std::max(m, std::abs(s_h - exact_prime(x)));
        }
        partial[i] = m;
    }
    double sup = 0.0;
    for (double p : partial)
        sup = std::max(sup, p);
    return sup;
}

const char* scheme_name(Scheme scheme)
{
    return scheme == Scheme::variational ? "variational" : "full";
}

double metric_value(const LevelResult& level, Metric m)
{
    switch (m) {
    case Metric::q_L1: return level.e_q_L1;
    case Metric::q_L2: return level.e_q_L2;
    case Metric::u_L2: return level.e_u_L2;
    case Metric::z_Linf: return level.e_z_Linf;
    case Metric::z_grad_Linf: return level.e_z_grad_Linf;
    }
    return 0.0;
}

double regression_slope(const StudyReport& report, Metric m, std::size_t first,
                        std::size_t last)
{
    if (last >= report.levels.size() || first > last)
        throw std::invalid_argument("regression_slope: bad level range");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(last - first + 1);
    for (std::size_t i = first; i <= last; ++i) {
        const double x = std::log(report.levels[i].h);
        const double y = std::log(metric_value(report.levels[i], m));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

struct Reference {
    std::unique_ptr<Mesh> mesh;
    std::unique_ptr<Solution> solution;

    bool active() const { return solution != nullptr; }
};

Solution solve_scheme(const Mesh& mesh, const ProblemSpec& spec, Scheme scheme,
                      const SolverConfig& config)
{
    return scheme == Scheme::variational ? solve_variational(mesh, spec, config)
                                         : solve_full_discrete(mesh, spec, config);
}

LevelResult compute_level(const ModelProblem& problem, Scheme scheme,
                          const StudyConfig& config, int k, const Reference* ref)
{
    const int n = (1 << k) - 1;
    Mesh mesh = Mesh::uniform(n);
    Solution sol = solve_scheme(mesh, problem.spec, scheme, config.solver);

    LevelResult lvl;
    lvl.k = k;
    lvl.n = n;
    lvl.h = 1.0 / n;
    lvl.outer_iterations = sol.outer_iterations;
    lvl.inner_fallback_used = sol.inner.fallback_used;
    lvl.optimality = sol.optimality;

    if (problem.has_exact) {
        const ExactSolution& ex = problem.exact;
        lvl.e_q_L1 = control_distance(sol.control, ex.control, 1);
        lvl.e_q_L2 = control_distance(sol.control, ex.control, 2);
        lvl.e_u_L2 = state_error_L2(sol.state, ex.state, ex.breakpoints,
                                    config.solver.quad_order);
        lvl.e_z_Linf = sup_error(sol.adjoint, ex.adjoint);
        lvl.e_z_grad_Linf = grad_sup_error(sol.adjoint, ex.adjoint_prime);
    } else {
        const Solution& rs = *ref->solution;
        lvl.e_q_L1 = control_distance(sol.control, rs.control, 1);
        lvl.e_q_L2 = control_distance(sol.control, rs.control, 2);
        const Mesh& rmesh = *ref->mesh;
        std::vector<double> cuts(rmesh.nodes().begin() + 1, rmesh.nodes().end() - 1);
        const NodalFunction& ru = rs.state;
        const NodalFunction& rz = rs.adjoint;
        lvl.e_u_L2 = state_error_L2(
            sol.state, [&ru](double x) { return ru(x); }, cuts, config.solver.quad_order);
        // Sample densely enough to resolve the reference mesh.
        const int spe = 20 * std::max(1, static_cast<int>(rmesh.element_count()) / n + 1);
        lvl.e_z_Linf = sup_error(sol.adjoint, [&rz](double x) { return rz(x); }, spe);
        lvl.e_z_grad_Linf = grad_sup_error(
            sol.adjoint,
            [&rz, &rmesh](double x) { return rz.slope(rmesh.element_of(x)); }, spe);
    }
    return lvl;
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

StudyReport run_study(const ModelProblem& problem, Scheme scheme, const StudyConfig& config)
{
    if (config.k_min < 1 || config.k_max < config.k_min)
        throw std::invalid_argument("run_study: bad level range");

    StudyReport report;
    report.problem = problem.name;
    report.scheme = scheme;

    Reference ref;
    if (!problem.has_exact) {
        const int n_ref = (1 << config.k_ref) - 1;
        ref.mesh = std::make_unique<Mesh>(Mesh::uniform(n_ref));
        ref.solution = std::make_unique<Solution>(
            solve_scheme(*ref.mesh, problem.spec, scheme, config.solver));
        report.has_reference = true;
        report.k_ref = config.k_ref;
        report.reference_control = ref.solution->control;
    }

    const int n_levels = config.k_max - config.k_min + 1;
    report.levels.resize(n_levels);
    const int jobs = std::max(1, config.jobs);
    if (jobs == 1) {
        for (int i = 0; i < n_levels; ++i)
            report.levels[i] = compute_level(problem, scheme, config, config.k_min + i,
                                             ref.active() ? &ref : nullptr);
    } else {
        std::atomic<int> next{0};
        std::vector<std::exception_ptr> errors(n_levels);
        auto worker = [&]() {
            for (int i = next.fetch_add(1); i < n_levels; i = next.fetch_add(1)) {
                try {
                    report.levels[i] = compute_level(problem, scheme, config,
                                                     config.k_min + i,
                                                     ref.active() ? &ref : nullptr);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        for (int j = 0; j < std::min(jobs, n_levels); ++j)
            pool.emplace_back(worker);
        for (std::thread& th : pool)
            th.join();
        for (const std::exception_ptr& e : errors)
            if (e)
                std::rethrow_exception(e);
    }
    return report;
}

std::string StudyReport::to_csv() const
{
    static const Metric kMetrics[] = {Metric::q_L1, Metric::q_L2, Metric::u_L2,
                                      Metric::z_Linf, Metric::z_grad_Linf};
    std::string out =
        "h,n,e_q_L1,e_q_L2,e_u_L2,e_z_Linf,e_z_grad_Linf,"
        "eoc_q_L1,eoc_q_L2,eoc_u_L2,eoc_z_Linf,eoc_z_grad_Linf\n";
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const LevelResult& lvl = levels[i];
        out += fmt(lvl.h) + "," + std::to_string(lvl.n);
        for (Metric m : kMetrics)
            out += "," + fmt(metric_value(lvl, m));
        for (Metric m : kMetrics) {
            out += ",";
            if (i > 0) {
                const double e0 = metric_value(levels[i - 1], m);
                const double e1 = metric_value(lvl, m);
                out += fmt(std::log(e0 / e1) / std::log(levels[i - 1].h / lvl.h));
            }
        }
        out += "\n";
    }
    return out;
}

std::string StudyReport::to_json() const
{
    nlohmann::json out;
    out["problem"] = problem;
    out["scheme"] = scheme_name(scheme);
    out["levels"] = nlohmann::json::array();
    for (const LevelResult& lvl : levels) {
        nlohmann::json j;
        j["k"] = lvl.k;
        j["n"] = lvl.n;
        j["h"] = lvl.h;
        j["e_q_L1"] = lvl.e_q_L1;
        j["e_q_L2"] = lvl.e_q_L2;
        j["e_u_L2"] = lvl.e_u_L2;
        j["e_z_Linf"] = lvl.e_z_Linf;
        j["e_z_grad_Linf"] = lvl.e_z_grad_Linf;
        j["outer_iterations"] = lvl.outer_iterations;
        j["inner_fallback_used"] = lvl.inner_fallback_used;
        j["optimality"] = nlohmann::json::parse(lvl.optimality.to_json());
        out["levels"].push_back(j);
    }
    static const std::pair<Metric, const char*> kNames[] = {
        {Metric::q_L1, "q_L1"},
        {Metric::q_L2, "q_L2"},
        {Metric::u_L2, "u_L2"},
        {Metric::z_Linf, "z_Linf"},
        {Metric::z_grad_Linf, "z_grad_Linf"}};
    nlohmann::json slopes;
    for (const auto& [m, name] : kNames) {
        slopes[std::string(name) + "_all"] = regression_slope(*this, m, 0, levels.size() - 1);
        if (levels.size() >= 4)
            slopes[std::string(name) + "_last4"] =
                regression_slope(*this, m, levels.size() - 4, levels.size() - 1);
    }
    out["slopes"] = slopes;
    if (has_reference) {
        out["k_ref"] = k_ref;
        out["reference_control"] = nlohmann::json::parse(reference_control.to_json());
    }
    return out.dump(2);
}

} // namespace bvopt
