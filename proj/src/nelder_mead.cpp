#include "csd/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace csd {

namespace {

// NaN-tolerant comparison: NaN objective values sort to the worst end so the
// simplex contracts away from invalid regions instead of stalling.
bool value_less(double a, double b) {
    if (std::isnan(a)) return false;
    if (std::isnan(b)) return true;
    return a < b;
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& options) {
    const int n = static_cast<int>(x0.size());
    if (n < 1) throw std::invalid_argument("nelder_mead: empty start point");
    const int max_iter = options.max_iterations > 0 ? options.max_iterations : 200 * n;

    constexpr double rho = 1.0;    // reflection
    constexpr double chi = 2.0;    // expansion
    constexpr double psi = 0.5;    // contraction
    constexpr double kappa = 0.5;  // shrink

    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> fv(n + 1);
    for (int i = 1; i <= n; ++i) {
        if (simplex[i][i - 1] != 0.0)
            simplex[i][i - 1] *= 1.05;
        else
            simplex[i][i - 1] = 0.00025;
    }
    for (int i = 0; i <= n; ++i) fv[i] = f(simplex[i]);

    auto order = [&] {
        std::vector<int> idx(n + 1);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](int a, int b) { return value_less(fv[a], fv[b]); });
        std::vector<std::vector<double>> s2(n + 1);
        std::vector<double> f2(n + 1);
        for (int i = 0; i <= n; ++i) {
            s2[i] = std::move(simplex[idx[i]]);
            f2[i] = fv[idx[i]];
        }
        simplex = std::move(s2);
        fv = std::move(f2);
    };

    order();
    int iter = 0;
    bool converged = false;
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);

    for (; iter < max_iter; ++iter) {
        double f_spread = 0.0, x_spread = 0.0;
        for (int i = 1; i <= n; ++i) {
            f_spread = std::max(f_spread, std::fabs(fv[i] - fv[0]));
            for (int j = 0; j < n; ++j)
                x_spread = std::max(x_spread, std::fabs(simplex[i][j] - simplex[0][j]));
        }
        if (f_spread <= options.f_tolerance && x_spread <= options.x_tolerance) {
            converged = true;
            break;
        }

        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += simplex[i][j];
            centroid[j] = s / n;
        }

        for (int j = 0; j < n; ++j) xr[j] = centroid[j] + rho * (centroid[j] - simplex[n][j]);
        const double fr = f(xr);

        if (value_less(fr, fv[0])) {
            for (int j = 0; j < n; ++j) xe[j] = centroid[j] + chi * (xr[j] - centroid[j]);
            const double fe = f(xe);
            if (value_less(fe, fr)) {
                simplex[n] = xe;
                fv[n] = fe;
            } else {
                simplex[n] = xr;
                fv[n] = fr;
            }
        } else if (value_less(fr, fv[n - 1])) {
            simplex[n] = xr;
            fv[n] = fr;
        } else {
            bool shrink = false;
            if (value_less(fr, fv[n])) {
                // outside contraction
                for (int j = 0; j < n; ++j) xc[j] = centroid[j] + psi * (xr[j] - centroid[j]);
                const double fc = f(xc);
                if (!value_less(fr, fc)) {
                    simplex[n] = xc;
                    fv[n] = fc;
                } else {
                    shrink = true;
                }
            } else {
                // inside contraction
                for (int j = 0; j < n; ++j)
                    xc[j] = centroid[j] - psi * (centroid[j] - simplex[n][j]);
                const double fc = f(xc);
                if (value_less(fc, fv[n])) {
                    simplex[n] = xc;
                    fv[n] = fc;
                } else {
                    shrink = true;
                }
            }
            if (shrink) {
                for (int i = 1; i <= n; ++i) {
                    for (int j = 0; j < n; ++j)
                        simplex[i][j] = simplex[0][j] + kappa * (simplex[i][j] - simplex[0][j]);
                    fv[i] = f(simplex[i]);
                }
            }
        }
        order();
    }

    return {simplex[0], fv[0], iter, converged};
}

}  // namespace csd
