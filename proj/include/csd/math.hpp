#pragma once

#include <cmath>
#include <span>

namespace csd {

inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // ln sqrt(2*pi)
inline constexpr double kSqrt2 = 1.4142135623730950488;

// log(1 + exp(t)) without overflow.
inline double log1pexp(double t) {
    if (t > 0.0) return t + std::log1p(std::exp(-t));
    return std::log1p(std::exp(t));
}

// log(exp(a) + exp(b)); tolerates -inf arguments.
inline double logaddexp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::fabs(a - b)));
}

double logsumexp(std::span<const double> values);

// Standard normal density, log-density, CDF and survival function.
inline double norm_pdf(double z) { return std::exp(-0.5 * z * z - kLogSqrt2Pi); }
inline double norm_logpdf(double z) { return -0.5 * z * z - kLogSqrt2Pi; }
inline double norm_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }
inline double norm_sf(double z) { return 0.5 * std::erfc(z / kSqrt2); }

// log Phi^c(z), stable for large positive z where erfc underflows.
double log_norm_sf(double z);
inline double log_norm_cdf(double z) { return log_norm_sf(-z); }

// log of the Mills ratio Phi^c(z) / phi(z).
inline double log_mills(double z) { return log_norm_sf(z) - norm_logpdf(z); }

// Inverse standard normal CDF (Wichura's AS241 PPND16 rational approximations).
double norm_quantile(double p);

}  // namespace csd
