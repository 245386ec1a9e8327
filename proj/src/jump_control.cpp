#include "bvopt/jump_control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace bvopt {

JumpControl::JumpControl(double offset, std::vector<Jump> jumps)
    : offset_(offset), jumps_(std::move(jumps))
{
    for (const Jump& j : jumps_)
        if (!(j.position > 0.0) || !(j.position < 1.0))
            throw std::invalid_argument("JumpControl: jump positions must lie in (0,1)");
    std::sort(jumps_.begin(), jumps_.end(),
              [](const Jump& a, const Jump& b) { return a.position < b.position; });
    // Merge jumps closer than the tolerance.
    std::vector<Jump> merged;
    for (const Jump& j : jumps_) {
        if (!merged.empty() && j.position - merged.back().position < kMergeTol)
            merged.back().height += j.height;
        else
            merged.push_back(j);
    }
    jumps_ = std::move(merged);
}

std::size_t JumpControl::nonzero_jump_count() const
{
    std::size_t n = 0;
    for (const Jump& j : jumps_)
        if (j.height != 0.0)
            ++n;
    return n;
}

std::vector<Jump> JumpControl::nonzero_jumps() const
{
    std::vector<Jump> out;
    for (const Jump& j : jumps_)
        if (j.height != 0.0)
            out.push_back(j);
    return out;
}

double JumpControl::operator()(double x) const
{
    if (x < 0.0 || x > 1.0)
        throw std::invalid_argument("JumpControl: evaluation outside [0,1]");
    double v = offset_;
    for (const Jump& j : jumps_) {
        if (j.position > x)
            break;
        v += j.height; // right limit at the jump itself
    }
    return v;
}

double JumpControl::total_variation() const
{
    double tv = 0.0;
    for (const Jump& j : jumps_)
        tv += std::abs(j.height);
    return tv;
}

double JumpControl::integrate(double a, double b) const
{
    double sum = 0.0;
    double left = a;
    double value = offset_;
    for (const Jump& j : jumps_) {
        if (j.position <= a) {
            value += j.height;
            continue;
        }
        if (j.position >= b)
            break;
        sum += value * (j.position - left);
        left = j.position;
        value += j.height;
    }
    sum += value * (b - left);
    return sum;
}

std::string JumpControl::to_json() const
{
    nlohmann::json out;
    out["offset"] = offset_;
    out["jumps"] = nlohmann::json::array();
    for (const Jump& j : jumps_)
        out["jumps"].push_back({{"t", j.position}, {"c", j.height}});
    return out.dump(2);
}

JumpControl JumpControl::from_json(const std::string& text)
{
    nlohmann::json in = nlohmann::json::parse(text);
    std::vector<Jump> jumps;
    for (const auto& j : in.at("jumps"))
        jumps.push_back({j.at("t").get<double>(), j.at("c").get<double>()});
    return JumpControl(in.at("offset").get<double>(), std::move(jumps));
}

double PiecewiseConstant::total_variation() const
{
    double tv = 0.0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        tv += std::abs(values[i + 1] - values[i]);
    return tv;
}

std::vector<double> load_of_jump_control(const Mesh& mesh, const JumpControl& q)
{
    const std::size_t l = mesh.element_count();
    std::vector<double> load(mesh.interior_count(), 0.0);

    // Accumulate per element: on [x_i, x_{i+1}] the hat of node i falls,
    // the hat of node i+1 rises; q is constant between its breakpoints.
    for (std::size_t i = 0; i < l; ++i) {
        const double x0 = mesh.node(i);
        const double x1 = mesh.node(i + 1);
        const double h = x1 - x0;
        // Sub-segments of the element delimited by jump positions.
        double s = x0;
        double value = q(x0); // right-continuous, constant on [x0, first jump)
        auto emit = [&](double a, double b, double v) {
            if (b <= a)
                return;
            // integral of the rising hat (x - x0)/h over [a, b]
            const double rise = ((b - x0) * (b - x0) - (a - x0) * (a - x0)) / (2.0 * h);
            // integral of the falling hat (x1 - x)/h over [a, b]
            const double fall = ((x1 - a) * (x1 - a) - (x1 - b) * (x1 - b)) / (2.0 * h);
            if (i + 1 <= l - 1)
                load[i] += v * rise; // node i+1 is interior
            if (i >= 1)
                load[i - 1] += v * fall; // node i is interior
        };
        for (const Jump& j : q.jumps()) {
            if (j.position <= x0 || j.position >= x1)
                continue;
            emit(s, j.position, value);
            s = j.position;
            value += j.height;
        }
        emit(s, x1, value);
    }
    return load;
}

PiecewiseConstant project_Pi_h(const JumpControl& q, const Mesh& mesh)
{
    PiecewiseConstant out{&mesh, std::vector<double>(mesh.element_count())};
    for (std::size_t i = 0; i < mesh.element_count(); ++i)
        out.values[i] = q.integrate(mesh.node(i), mesh.node(i + 1)) / mesh.width(i);
    return out;
}

double control_distance(const JumpControl& q1, const JumpControl& q2, int p)
{
    if (p != 1 && p != 2)
        throw std::invalid_argument("control_distance: p must be 1 or 2");
    std::vector<double> cuts{0.0, 1.0};
    for (const Jump& j : q1.jumps())
        cuts.push_back(j.position);
    for (const Jump& j : q2.jumps())
        cuts.push_back(j.position);
    std::sort(cuts.begin(), cuts.end());
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double a = cuts[k], b = cuts[k + 1];
        if (b <= a)
            continue;
        const double d = q1(a) - q2(a); // constant on [a, b)
        sum += (p == 1 ? std::abs(d) : d * d) * (b - a);
    }
    return p == 1 ? sum : std::sqrt(sum);
}

} // namespace bvopt
