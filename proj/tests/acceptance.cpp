// End-to-end acceptance checks: convergence rates of both discretizations,
// reference-solution structure, optimality certificates, solver cross
// validation, property suites, and byte-level determinism of study output.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "bvopt/study.hpp"
#include "bvopt/verify.hpp"

using namespace bvopt;

namespace {

int g_failures = 0;

void report(int index, const std::string& label, bool ok, const std::string& detail)
{
    std::printf("[%s] %d %s (%s)\n", ok ? "PASS" : "FAIL", index, label.c_str(),
                detail.c_str());
    if (!ok)
        ++g_failures;
}

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

bool certificates_ok(const StudyReport& report, double alpha, double& worst, int& mismatches)
{
    bool ok = true;
    for (const LevelResult& lvl : report.levels) {
        const OptimalityReport& o = lvl.optimality;
        ok = ok && o.phi_at_one <= 1e-8 * alpha;
        worst = std::max(worst, o.phi_at_one / alpha);
        if (report.scheme == Scheme::variational)
            ok = ok && o.phi_sup_sampled <= alpha * (1.0 + 1e-6);
        else
            ok = ok && o.nodal_phi_bound_violation <= 1e-6 * alpha;
        ok = ok && o.sign_mismatches == 0;
        mismatches += o.sign_mismatches;
    }
    return ok;
}

} // namespace

int main()
{
    ModelProblem ex1 = example1();
    ModelProblem ex2 = example2();
    const double alpha = ex1.spec.alpha;

    // Study A: known-solution problem, free jump positions, k = 4..9.
    StudyConfig cfg_a;
    cfg_a.k_min = 4;
    cfg_a.k_max = 9;
    StudyReport study_a = run_study(ex1, Scheme::variational, cfg_a);

    {
        const std::size_t last = study_a.levels.size() - 1;
        const double s_q1 = regression_slope(study_a, Metric::q_L1, last - 3, last);
        const double s_u = regression_slope(study_a, Metric::u_L2, last - 3, last);
        const double s_z = regression_slope(study_a, Metric::z_Linf, last - 3, last);
        const double e0 = study_a.levels[0].e_q_L1;
        const bool ok = s_q1 >= 1.85 && s_u >= 1.85 && s_z >= 1.85 && e0 >= 0.05 &&
                        e0 <= 1.0;
        report(1, "second-order rates, variational scheme", ok,
               "q_L1 " + num(s_q1) + ", u_L2 " + num(s_u) + ", z_Linf " + num(s_z) +
                   ", coarse e_q_L1 " + num(e0));
    }

    {
        const std::size_t last = study_a.levels.size() - 1;
        const double s_q2 = regression_slope(study_a, Metric::q_L2, last - 3, last);
        report(2, "first-order L2 control rate, variational scheme",
               s_q2 >= 0.8 && s_q2 <= 1.3, "q_L2 " + num(s_q2));
    }

    // Study B: known-solution problem, jumps restricted to gridpoints.
    StudyConfig cfg_b;
    cfg_b.k_min = 4;
    cfg_b.k_max = 11;
    StudyReport study_b = run_study(ex1, Scheme::full, cfg_b);
    {
        const double s = regression_slope(study_b, Metric::q_L1, 0, study_b.levels.size() - 1);
        report(3, "first-order L1 control rate, fully discrete scheme",
               s >= 0.8 && s <= 1.4, "q_L1 " + num(s));
    }

    // Study C: smooth-target problem against a fine reference run.
    StudyConfig cfg_c;
    cfg_c.k_min = 4;
    cfg_c.k_max = 10;
    cfg_c.k_ref = 14;
    StudyReport study_c = run_study(ex2, Scheme::variational, cfg_c);
    {
        const std::size_t last = study_c.levels.size() - 1;
        const double s = regression_slope(study_c, Metric::q_L1, last - 2, last);
        std::vector<Jump> jumps = study_c.reference_control.nonzero_jumps();
        bool ok = s >= 1.8 && jumps.size() == 2;
        std::string detail = "q_L1 slope " + num(s) + ", jumps " +
                             std::to_string(jumps.size());
        if (jumps.size() == 2) {
            ok = ok && std::abs(jumps[0].position - 0.291511545096475) <= 1e-3;
            ok = ok && std::abs(jumps[1].position - 0.708488457217153) <= 1e-3;
            // The recorded reference plateau data lists running sums of the
            // segment values, so compare in those terms.
            const double v0 = study_c.reference_control.offset();
            const double v1 = v0 + jumps[0].height;
            const double v2 = v1 + jumps[1].height;
            const double f0 = v0, f1 = v0 + v1, f2 = v0 + v1 + v2;
            ok = ok && std::abs(f0 - (-0.58747362502274)) <= 1e-2;
            ok = ok && std::abs(f1 - 0.881173376024765) <= 1e-2;
            ok = ok && std::abs(f2 - 0.29369976476994) <= 1e-2;
            detail += " at " + num(jumps[0].position) + "/" + num(jumps[1].position) +
                      ", plateau sums " + num(f0) + "/" + num(f1) + "/" + num(f2);
        }
        report(4, "reference structure and rate, smooth-target problem", ok, detail);
    }

    {
        double worst = 0.0;
        int mismatches = 0;
        bool ok = certificates_ok(study_a, alpha, worst, mismatches);
        ok = certificates_ok(study_b, alpha, worst, mismatches) && ok;
        ok = certificates_ok(study_c, ex2.spec.alpha, worst, mismatches) && ok;
        report(5, "optimality certificates on every run", ok,
               "max |Phi(1)|/alpha " + num(worst) + ", sign mismatches " +
                   std::to_string(mismatches));
    }

    {
        bool ok = true;
        std::string detail;
        for (const CheckResult& c : subproblem_cross_checks(100)) {
            ok = ok && c.passed;
            detail += (detail.empty() ? "" : "; ") + c.detail;
        }
        report(6, "active-set solver matches independent oracle on 100 instances", ok,
               detail);
    }

    {
        bool ok = true;
        int checks = 0, failed = 0;
        for (auto&& group : {projection_checks(500), fem_checks(), symmetry_checks(),
                             analytic_solution_checks()}) {
            for (const CheckResult& c : group) {
                ++checks;
                if (!c.passed) {
                    ++failed;
                    ok = false;
                }
            }
        }
        report(7, "property suites", ok,
               std::to_string(checks - failed) + "/" + std::to_string(checks) +
                   " checks passed");
    }

    {
        StudyConfig c1;
        c1.k_min = 4;
        c1.k_max = 7;
        StudyConfig c2 = c1;
        c2.jobs = 2;
        StudyReport r1 = run_study(ex1, Scheme::variational, c1);
        StudyReport r2 = run_study(ex1, Scheme::variational, c2);
        const bool ok = r1.to_csv() == r2.to_csv() && r1.to_json() == r2.to_json();
        report(8, "byte-identical study output across job counts", ok,
               ok ? "csv and json match" : "outputs differ");
    }

    return g_failures == 0 ? 0 : 1;
}
