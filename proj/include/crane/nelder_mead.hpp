#pragma once

#include <functional>
#include <vector>

namespace crane {

struct NelderMeadOptions {
    int max_iter = 500;
    double f_tol = 1e-8;  ///< stop once the best objective value drops below this
    double x_tol = 1e-8;  ///< stop once the simplex diameter shrinks below this, relative
};

struct NelderMeadResult {
    std::vector<double> x;
    double fval = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Derivative-free simplex minimization (reflection 1, expansion 2,
/// contraction 0.5, shrink 0.5). Fully deterministic: ties broken by index,
/// no randomness anywhere. Infinite objective values are legal and act as
/// penalties.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, const std::vector<double>& step,
                             const NelderMeadOptions& opts = {});

}  // namespace crane
