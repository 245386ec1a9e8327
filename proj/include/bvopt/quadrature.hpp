#ifndef BVOPT_QUADRATURE_HPP
#define BVOPT_QUADRATURE_HPP

#include <vector>

namespace bvopt {

// Gauss-Legendre rule on the reference interval [-1, 1].
struct GaussRule {
    std::vector<double> points;
    std::vector<double> weights;
};

// Rule with `order` points, exact for polynomials up to degree 2*order - 1.
const GaussRule& gauss_rule(int order);

// Integrate f over [a, b] with the given rule.
template <class F>
double gauss_integrate(const F& f, double a, double b, int order)
{
    const GaussRule& rule = gauss_rule(order);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.points.size(); ++i)
        sum += rule.weights[i] * f(mid + half * rule.points[i]);
    return half * sum;
}

} // namespace bvopt

#endif
