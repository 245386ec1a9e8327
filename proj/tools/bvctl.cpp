#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bvopt/model_problems.hpp"
#include "bvopt/solver.hpp"
#include "bvopt/study.hpp"
#include "bvopt/verify.hpp"

namespace {

using namespace bvopt;

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string nodal_csv(const NodalFunction& f, const char* column)
{
    std::string out = std::string("x,") + column + "\n";
    for (std::size_t j = 0; j < f.mesh().node_count(); ++j)
        out += fmt(f.mesh().node(j)) + "," + fmt(f.value(j)) + "\n";
    return out;
}

int cmd_solve(const std::string& problem_name, const std::string& scheme_str, int n,
              const std::string& out_dir)
{
    ModelProblem problem = model_problem_by_name(problem_name);
    const Scheme scheme = scheme_str == "full" ? Scheme::full : Scheme::variational;
    Mesh mesh = Mesh::uniform(n);

    const auto t0 = std::chrono::steady_clock::now();
    Solution sol = scheme == Scheme::full ? solve_full_discrete(mesh, problem.spec)
                                          : solve_variational(mesh, problem.spec);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    PhiFunction phi(sol.adjoint);
    std::string phi_csv = "x,phi\n";
    for (std::size_t j = 0; j < mesh.node_count(); ++j)
        phi_csv += fmt(mesh.node(j)) + "," + fmt(phi.at_node(j)) + "\n";

    nlohmann::json summary;
    summary["problem"] = problem.name;
    summary["scheme"] = scheme_name(scheme);
    summary["n"] = n;
    summary["outer_iterations"] = sol.outer_iterations;
    summary["inner_iterations"] = sol.inner.iterations;
    summary["inner_fallback_used"] = sol.inner.fallback_used;
    summary["optimality"] = nlohmann::json::parse(sol.optimality.to_json());
    summary["control"] = nlohmann::json::parse(sol.control.to_json());
    summary["total_variation"] = sol.control.total_variation();

    write_file(out_dir + "/control.json", sol.control.to_json() + "\n");
    write_file(out_dir + "/state.csv", nodal_csv(sol.state, "u"));
    write_file(out_dir + "/adjoint.csv", nodal_csv(sol.adjoint, "z"));
    write_file(out_dir + "/phi.csv", phi_csv);
    write_file(out_dir + "/summary.json", summary.dump(2) + "\n");

    std::cout << "solved " << problem.name << " (" << scheme_name(scheme) << ", n=" << n
              << ") in " << sol.outer_iterations << " outer iterations, " << secs
              << " s\n"
              << "jumps: " << sol.control.nonzero_jump_count()
              << ", TV: " << sol.control.total_variation() << "\n"
              << "|Phi(1)| = " << sol.optimality.phi_at_one
              << ", sign mismatches: " << sol.optimality.sign_mismatches << "\n";
    return 0;
}

int cmd_study(const std::string& problem_name, const std::string& scheme_str,
              const StudyConfig& config, const std::string& out_dir)
{
    ModelProblem problem = model_problem_by_name(problem_name);
    const Scheme scheme = scheme_str == "full" ? Scheme::full : Scheme::variational;

    const auto t0 = std::chrono::steady_clock::now();
    StudyReport report = run_study(problem, scheme, config);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const std::string stem =
        out_dir + "/" + problem.name + "_" + scheme_name(scheme) + "_study";
    write_file(stem + ".csv", report.to_csv());
    write_file(stem + ".json", report.to_json() + "\n");

    std::cout << report.to_csv();
    std::cout << "study finished in " << secs << " s, wrote " << stem << ".{csv,json}\n";
    return 0;
}

int cmd_verify()
{
    int failures = 0;
    for (const CheckResult& c : run_verification()) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail
                  << ")\n";
        if (!c.passed)
            ++failures;
    }
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"BV-regularized elliptic optimal control solver"};
    app.require_subcommand(1);

    std::string problem = "example1";
    std::string scheme = "variational";
    std::string out_dir = ".";
    int n = 255;
    StudyConfig study_config;

    CLI::App* solve = app.add_subcommand("solve", "solve one problem instance");
    solve->add_option("--problem", problem, "example1 or example2");
    solve->add_option("--scheme", scheme)->check(CLI::IsMember({"variational", "full"}));
    solve->add_option("--n", n, "number of mesh elements")->check(CLI::PositiveNumber);
    solve->add_option("--out", out_dir, "output directory");

    CLI::App* study = app.add_subcommand("study", "mesh refinement convergence study");
    study->add_option("--problem", problem, "example1 or example2");
    study->add_option("--scheme", scheme)->check(CLI::IsMember({"variational", "full"}));
    study->add_option("--kmin", study_config.k_min, "coarsest level, n = 2^k - 1");
    study->add_option("--kmax", study_config.k_max, "finest level");
    study->add_option("--kref", study_config.k_ref, "reference level (no exact solution)");
    study->add_option("--jobs", study_config.jobs, "levels computed in parallel");
    study->add_option("--out", out_dir, "output directory");

    app.add_subcommand("verify", "run the built-in property checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("solve"))
            return cmd_solve(problem, scheme, n, out_dir);
        if (app.got_subcommand("study"))
            return cmd_study(problem, scheme, study_config, out_dir);
        return cmd_verify();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
