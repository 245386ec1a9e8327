#ifndef BVOPT_MESH_HPP
#define BVOPT_MESH_HPP

#include <cstddef>
#include <vector>

namespace bvopt {

// Partition of [0,1] into elements (x_{i-1}, x_i).
class Mesh {
public:
    explicit Mesh(std::vector<double> nodes);

    static Mesh uniform(int n_elements);

    const std::vector<double>& nodes() const { return nodes_; }
    std::size_t element_count() const { return nodes_.size() - 1; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t interior_count() const { return nodes_.size() - 2; }

    double node(std::size_t j) const { return nodes_[j]; }
    // Width of element i, i.e. of (x_i, x_{i+1}) for i = 0..l-1.
    double width(std::size_t i) const { return nodes_[i + 1] - nodes_[i]; }
    double max_width() const { return h_max_; }

    // Index i with x in [x_i, x_{i+1}]; clamps to the boundary elements.
    std::size_t element_of(double x) const;

    bool same_as(const Mesh& other) const { return this == &other; }

private:
    std::vector<double> nodes_;
    double h_max_;
};

// Member of V_h: continuous, piecewise linear, zero at both boundary nodes.
class NodalFunction {
public:
    NodalFunction(const Mesh& mesh, std::vector<double> values);

    // Zero function on the mesh.
    static NodalFunction zero(const Mesh& mesh);
    // Build from interior values, padding boundary zeros.
    static NodalFunction from_interior(const Mesh& mesh, const std::vector<double>& interior);

    const Mesh& mesh() const { return *mesh_; }
    const std::vector<double>& values() const { return values_; }
    double value(std::size_t j) const { return values_[j]; }

    double operator()(double x) const;
    // Constant slope on element i.
    double slope(std::size_t i) const;

private:
    const Mesh* mesh_;
    std::vector<double> values_;
};

} // namespace bvopt

#endif
