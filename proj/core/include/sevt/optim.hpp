#pragma once

#include <functional>
#include <vector>

namespace sevt::detail {

struct NelderMeadOptions {
    double tol = 1e-8;   ///< convergence on the simplex value spread
    int max_iter = 10000;
};

struct NelderMeadResult {
    std::vector<double> x;
    double fmin = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// Derivative-free simplex minimizer (Nelder-Mead with standard
/// reflection/expansion/contraction/shrink coefficients). The initial
/// simplex is x0 plus per-coordinate steps.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, const std::vector<double>& step,
                             const NelderMeadOptions& opts = {});

}  // namespace sevt::detail
