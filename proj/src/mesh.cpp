#include "bvopt/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bvopt {

Mesh::Mesh(std::vector<double> nodes) : nodes_(std::move(nodes))
{
    if (nodes_.size() < 3)
        throw std::invalid_argument("Mesh: need at least 2 elements");
    if (nodes_.front() != 0.0 || nodes_.back() != 1.0)
        throw std::invalid_argument("Mesh: nodes must span [0,1]");
    h_max_ = 0.0;
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
        double w = nodes_[i + 1] - nodes_[i];
        if (!(w > 0.0))
            throw std::invalid_argument("Mesh: nodes must be strictly increasing");
        h_max_ = std::max(h_max_, w);
    }
}

Mesh Mesh::uniform(int n)
{
    if (n < 2)
        throw std::invalid_argument("Mesh::uniform: n must be >= 2");
    std::vector<double> nodes(n + 1);
    for (int j = 0; j <= n; ++j)
        nodes[j] = static_cast<double>(j) / n;
    nodes[n] = 1.0;
    return Mesh(std::move(nodes));
}

std::size_t Mesh::element_of(double x) const
{
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    std::size_t i = (it == nodes_.begin()) ? 0 : static_cast<std::size_t>(it - nodes_.begin()) - 1;
    return std::min(i, element_count() - 1);
}

NodalFunction::NodalFunction(const Mesh& mesh, std::vector<double> values)
    : mesh_(&mesh), values_(std::move(values))
{
    if (values_.size() != mesh.node_count())
        throw std::invalid_argument("NodalFunction: value count mismatch");
    if (values_.front() != 0.0 || values_.back() != 0.0)
        throw std::invalid_argument("NodalFunction: boundary values must be zero");
}

NodalFunction NodalFunction::zero(const Mesh& mesh)
{
    return NodalFunction(mesh, std::vector<double>(mesh.node_count(), 0.0));
}

NodalFunction NodalFunction::from_interior(const Mesh& mesh, const std::vector<double>& interior)
{
    if (interior.size() != mesh.interior_count())
        throw std::invalid_argument("NodalFunction: interior count mismatch");
    std::vector<double> vals(mesh.node_count(), 0.0);
    std::copy(interior.begin(), interior.end(), vals.begin() + 1);
    return NodalFunction(mesh, std::move(vals));
}

double NodalFunction::operator()(double x) const
{
    std::size_t i = mesh_->element_of(x);
    double x0 = mesh_->node(i);
    double t = (x - x0) / mesh_->width(i);
    return values_[i] + t * (values_[i + 1] - values_[i]);
}

double NodalFunction::slope(std::size_t i) const
{
    return (values_[i + 1] - values_[i]) / mesh_->width(i);
}

} // namespace bvopt
