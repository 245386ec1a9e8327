// Compares the OpenMP kernels against their serial reference on a large
// mesh: timings plus a bitwise equality check of the results.

#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>

#include "bvopt/fem.hpp"
#include "bvopt/study.hpp"

using namespace bvopt;

namespace {

template <typename F>
double time_ms(F&& f, int reps)
{
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r)
        f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b)
{
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

} // namespace

int main(int argc, char** argv)
{
    int n = 1 << 18;
    int reps = 5;
    if (argc > 1)
        n = std::atoi(argv[1]);
    if (argc > 2)
        reps = std::atoi(argv[2]);

    Mesh mesh = Mesh::uniform(n);
    auto f = [](double x) { return std::sin(7.0 * x) + x * x; };

    std::vector<double> lp, ls;
    const double t_load_par = time_ms([&] { lp = quadrature_load(mesh, f); }, reps);
    const double t_load_ser = time_ms([&] { ls = serial::quadrature_load(mesh, f); }, reps);
    std::cout << "quadrature_load  n=" << n << "  parallel " << t_load_par
              << " ms  serial " << t_load_ser << " ms  bitwise "
              << (bitwise_equal(lp, ls) ? "equal" : "DIFFERENT") << "\n";

    std::vector<double> vals(mesh.node_count(), 0.0);
    for (std::size_t j = 1; j + 1 < vals.size(); ++j)
        vals[j] = std::sin(3.0 * mesh.node(j));
    NodalFunction u(mesh, vals);
    auto g = [](double x) { return std::sin(3.0 * x) - 0.1 * x; };
    double ep = 0, es = 0;
    const double t_err_par = time_ms([&] { ep = state_error_L2(u, g, {}); }, reps);
    const double t_err_ser = time_ms([&] { es = serial::state_error_L2(u, g, {}); }, reps);
    std::cout << "state_error_L2   n=" << n << "  parallel " << t_err_par
              << " ms  serial " << t_err_ser << " ms  bitwise "
              << (ep == es ? "equal" : "DIFFERENT") << "\n";

    return (bitwise_equal(lp, ls) && ep == es) ? 0 : 1;
}
