#include "bvopt/tridiag.hpp"

#include <cmath>

namespace bvopt {

TridiagonalSystem::TridiagonalSystem(std::vector<double> main, std::vector<double> off)
    : main_(std::move(main)), off_(std::move(off))
{
    if (main_.empty() || off_.size() + 1 != main_.size())
        throw std::invalid_argument("TridiagonalSystem: diagonal sizes inconsistent");
}

void TridiagonalSystem::factorize() const
{
    const std::size_t n = main_.size();
    diag_fac_.resize(n);
    low_fac_.resize(n > 0 ? n - 1 : 0);
    diag_fac_[0] = main_[0];
    for (std::size_t i = 1; i < n; ++i) {
        if (diag_fac_[i - 1] == 0.0 || !std::isfinite(diag_fac_[i - 1]))
            throw SingularSystem("TridiagonalSystem: zero pivot");
        low_fac_[i - 1] = off_[i - 1] / diag_fac_[i - 1];
        diag_fac_[i] = main_[i] - low_fac_[i - 1] * off_[i - 1];
    }
    if (diag_fac_[n - 1] == 0.0 || !std::isfinite(diag_fac_[n - 1]))
        throw SingularSystem("TridiagonalSystem: zero pivot");
    factored_ = true;
}

std::vector<double> TridiagonalSystem::solve(const std::vector<double>& rhs) const
{
    if (rhs.size() != main_.size())
        throw std::invalid_argument("TridiagonalSystem::solve: rhs size mismatch");
    if (!factored_)
        factorize();
    const std::size_t n = main_.size();
    std::vector<double> x(rhs);
    for (std::size_t i = 1; i < n; ++i)
        x[i] -= low_fac_[i - 1] * x[i - 1];
    x[n - 1] /= diag_fac_[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        x[i] = x[i] / diag_fac_[i] - low_fac_[i] * x[i + 1];
    return x;
}

std::vector<double> TridiagonalSystem::multiply(const std::vector<double>& x) const
{
    const std::size_t n = main_.size();
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = main_[i] * x[i];
        if (i > 0)
            y[i] += off_[i - 1] * x[i - 1];
        if (i + 1 < n)
            y[i] += off_[i] * x[i + 1];
    }
    return y;
}

} // namespace bvopt
