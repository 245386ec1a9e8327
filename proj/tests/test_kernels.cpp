#include <doctest.h>

#include <cmath>
#include <cstring>

#include "bvopt/study.hpp"

using namespace bvopt;

namespace {

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b)
{
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

} // namespace

TEST_CASE("parallel load assembly is bitwise identical to serial")
{
    Mesh mesh = Mesh::uniform(4097);
    auto f = [](double x) { return std::sin(9.0 * x) + std::exp(-x) * x; };
    CHECK(bitwise_equal(quadrature_load(mesh, f), serial::quadrature_load(mesh, f)));
}

TEST_CASE("parallel error kernel is bitwise identical to serial")
{
    Mesh mesh = Mesh::uniform(2049);
    std::vector<double> vals(mesh.node_count(), 0.0);
    for (std::size_t j = 1; j + 1 < vals.size(); ++j)
        vals[j] = std::cos(5.0 * mesh.node(j)) - 1.0;
    NodalFunction u(mesh, vals);
    auto g = [](double x) { return std::cos(5.0 * x) - 1.0 + 0.01 * x; };
    const double par = state_error_L2(u, g, {0.3, 0.71});
    const double ser = serial::state_error_L2(u, g, {0.3, 0.71});
    CHECK(std::memcmp(&par, &ser, sizeof(double)) == 0);
}

TEST_CASE("study output bytes do not depend on the job count")
{
    StudyConfig c1;
    c1.k_min = 4;
    c1.k_max = 6;
    StudyConfig c2 = c1;
    c2.jobs = 3;
    StudyReport r1 = run_study(example1(), Scheme::variational, c1);
    StudyReport r2 = run_study(example1(), Scheme::variational, c2);
    CHECK(r1.to_csv() == r2.to_csv());
    CHECK(r1.to_json() == r2.to_json());
}

TEST_CASE("repeated runs are byte identical")
{
    StudyConfig c;
    c.k_min = 4;
    c.k_max = 5;
    StudyReport r1 = run_study(example1(), Scheme::full, c);
    StudyReport r2 = run_study(example1(), Scheme::full, c);
    CHECK(r1.to_csv() == r2.to_csv());
    CHECK(r1.to_json() == r2.to_json());
}
