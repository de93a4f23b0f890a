#pragma once

#include <functional>
#include <vector>

namespace csd {

struct NelderMeadOptions {
    // Termination: the simplex f-spread and coordinate spread must both fall
    // below these, mirroring fminsearch's TolFun/TolX pair.
    double f_tolerance = 1e-4;
    double x_tolerance = 1e-4;
    int max_iterations = 0;  // 0 -> 200 * dimension
};

struct NelderMeadResult {
    std::vector<double> x;
    double f;
    int iterations;
    bool converged;
};

// Minimizes f by the Nelder-Mead simplex direct search with the classic
// coefficients (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
// The initial simplex perturbs each coordinate of x0 by 5% (0.00025 if zero).
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& options = {});

}  // namespace csd
