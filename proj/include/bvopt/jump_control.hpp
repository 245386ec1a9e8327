#ifndef BVOPT_JUMP_CONTROL_HPP
#define BVOPT_JUMP_CONTROL_HPP

#include <string>
#include <vector>

#include "bvopt/mesh.hpp"

namespace bvopt {

struct Jump {
    double position; // in (0,1)
    double height;
};

// BV control in offset-plus-jumps form: q = offset + sum_i height_i * 1_(t_i, 1).
// Evaluation is right-continuous at the jump positions. Jumps closer than
// the merge tolerance are combined at construction.
class JumpControl {
public:
    static constexpr double kMergeTol = 1e-12;

    explicit JumpControl(double offset = 0.0, std::vector<Jump> jumps = {});

    double offset() const { return offset_; }
    const std::vector<Jump>& jumps() const { return jumps_; }
    std::size_t nonzero_jump_count() const;
    std::vector<Jump> nonzero_jumps() const;

    double operator()(double x) const;
    double total_variation() const;
    // Exact integral over [a, b] in [0,1].
    double integrate(double a, double b) const;

    std::string to_json() const;
    static JumpControl from_json(const std::string& text);

private:
    double offset_;
    std::vector<Jump> jumps_; // sorted by position
};

// Element-wise constant function on a mesh (image of the averaging projection).
struct PiecewiseConstant {
    const Mesh* mesh;
    std::vector<double> values; // one per element

    double operator()(double x) const { return values[mesh->element_of(x)]; }
    double total_variation() const;
};

std::vector<double> load_of_jump_control(const Mesh& mesh, const JumpControl& q);
PiecewiseConstant project_Pi_h(const JumpControl& q, const Mesh& mesh);
double control_distance(const JumpControl& q1, const JumpControl& q2, int p);

} // namespace bvopt

#endif
