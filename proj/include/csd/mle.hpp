#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "csd/distribution.hpp"

namespace csd {

enum class FitStatus { Converged, NotEstimable, HessianSingular };
std::string_view fit_status_name(FitStatus s);

// Two-sided 5% critical value for the t-ratio significance flags.
inline constexpr double kTRatioCritical = 1.96;
// A fit is declared degenerate (not estimable) when a component scale or a
// mixture weight collapses below these floors.
inline constexpr double kSigmaFloor = 1e-8;
inline constexpr double kWeightFloor = 1e-8;

struct FitConfig {
    double tolerance = 1e-4;        // simplex tolerance and restart-improvement cutoff
    int max_iterations_per_run = 0; // 0 -> 200 * dimension (EM: 2000)
    int max_restarts = 10;
    std::optional<Distribution> initial;
};

struct FitResult {
    Family family = Family::LN;
    // Estimates; empty when the family could not be estimated on this sample.
    std::optional<Distribution> spec;
    // Filled by standard_errors(); NaN entries mean "not available".
    std::vector<double> std_errors;
    std::vector<double> t_ratios;
    double log_likelihood = std::numeric_limits<double>::quiet_NaN();
    std::size_t n = 0;
    bool converged = false;
    int restarts_used = 0;
    FitStatus status = FitStatus::NotEstimable;

    bool estimable() const { return spec.has_value(); }
    // |t| >= 1.96; false when the t-ratio is missing.
    bool parameter_significant(std::size_t i) const;
};

double log_likelihood(const Distribution& d, std::span<const double> data);

// Closed-form lognormal ML: mu = mean of logs, sigma = divide-by-n standard
// deviation of logs. NotEstimable when the sample is degenerate (sigma = 0).
FitResult fit_ln_exact(std::span<const double> data);

// Direct-search ML for any of the seven families: Nelder-Mead on a transformed
// unconstrained space (log for positive parameters, stick-breaking logits for
// mixture weights), restarted from its own output until the log-likelihood
// improvement between consecutive runs drops below the tolerance.
FitResult fit_mle(Family family, std::span<const double> data, const FitConfig& config = {});

// EM for lognormal mixtures (2LN/3LN), used as an independent cross-check of
// the direct search.
FitResult fit_mixture_em(Family family, std::span<const double> data,
                         const FitConfig& config = {});

// Augments a converged fit with observed-Fisher-information standard errors:
// SE = sqrt(diag(inverse of the negative finite-difference Hessian of the
// log-likelihood at the estimates)) and t = estimate / SE. Sets status
// HessianSingular (SEs missing) when the information matrix is not positive
// definite.
FitResult standard_errors(FitResult result, std::span<const double> data);

}  // namespace csd
