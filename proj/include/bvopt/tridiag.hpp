#ifndef BVOPT_TRIDIAG_HPP
#define BVOPT_TRIDIAG_HPP

#include <stdexcept>
#include <vector>

namespace bvopt {

struct SingularSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Symmetric tridiagonal system over the interior nodes. The LDL^T
// factorization is cached on first solve; the matrix itself is immutable.
class TridiagonalSystem {
public:
    TridiagonalSystem(std::vector<double> main, std::vector<double> off);

    std::size_t size() const { return main_.size(); }
    const std::vector<double>& main_diagonal() const { return main_; }
    const std::vector<double>& off_diagonal() const { return off_; }

    std::vector<double> solve(const std::vector<double>& rhs) const;
    std::vector<double> multiply(const std::vector<double>& x) const;

private:
    void factorize() const;

    std::vector<double> main_;
    std::vector<double> off_;
    mutable std::vector<double> diag_fac_; // D of LDL^T
    mutable std::vector<double> low_fac_;  // unit subdiagonal of L
    mutable bool factored_ = false;
};

} // namespace bvopt

#endif
