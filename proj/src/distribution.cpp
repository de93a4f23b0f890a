#include "csd/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "csd/math.hpp"
#include "csd/rng.hpp"

namespace csd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require(bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

// ---- CDFs on y = ln x ------------------------------------------------------

double ln_logcdf_arg(double y, double mu, double sigma) { return (y - mu) / sigma; }

double ll_cdf(double y, double mu, double sigma) {
    return 1.0 / (1.0 + std::exp(-(y - mu) / sigma));
}

// Normal-Laplace CDF of ln x:
//   F = Phi(z) - phi(z) (beta R(alpha s - z) - alpha R(beta s + z))/(alpha+beta).
// Terms are assembled from their logs; both vanish in both tails.
double dpln_cdf(double y, double alpha, double beta, double mu, double sigma) {
    const double z = (y - mu) / sigma;
    const double lphi = norm_logpdf(z);
    const double upper = std::exp(lphi + log_mills(alpha * sigma - z));
    const double lower = std::exp(lphi + log_mills(beta * sigma + z));
    const double f = norm_cdf(z) - (beta * upper - alpha * lower) / (alpha + beta);
    return std::clamp(f, 0.0, 1.0);
}

int components_for(Family f) {
    switch (f) {
        case Family::LN2:
        case Family::LL2:
            return 2;
        case Family::LN3:
        case Family::LL3:
            return 3;
        default:
            return 1;
    }
}

}  // namespace

std::string_view family_name(Family f) {
    switch (f) {
        case Family::LN: return "LN";
        case Family::LL: return "LL";
        case Family::DPLN: return "dPLN";
        case Family::LN2: return "2LN";
        case Family::LL2: return "2LL";
        case Family::LN3: return "3LN";
        case Family::LL3: return "3LL";
    }
    return "?";
}

std::optional<Family> family_from_name(std::string_view name) {
    for (Family f : kAllFamilies)
        if (family_name(f) == name) return f;
    return std::nullopt;
}

int family_param_count(Family f) {
    switch (f) {
        case Family::LN:
        case Family::LL: return 2;
        case Family::DPLN: return 4;
        case Family::LN2:
        case Family::LL2: return 5;
        case Family::LN3:
        case Family::LL3: return 8;
    }
    return 0;
}

bool family_is_mixture(Family f) { return components_for(f) > 1; }

int family_component_count(Family f) { return components_for(f); }

Family family_mixture_base(Family f) {
    switch (f) {
        case Family::LN2:
        case Family::LN3: return Family::LN;
        case Family::LL2:
        case Family::LL3: return Family::LL;
        default: return f;
    }
}

// ---- construction -----------------------------------------------------------

Distribution Distribution::lognormal(double mu, double sigma) {
    require(std::isfinite(mu), "LN: mu must be finite");
    require(finite_positive(sigma), "LN: sigma must be > 0");
    return Distribution(Family::LN, LnParams{mu, sigma});
}

Distribution Distribution::loglogistic(double mu, double sigma) {
    require(std::isfinite(mu), "LL: mu must be finite");
    require(finite_positive(sigma), "LL: sigma must be > 0");
    return Distribution(Family::LL, LlParams{mu, sigma});
}

Distribution Distribution::dpln(double alpha, double beta, double mu, double sigma) {
    require(finite_positive(alpha), "dPLN: alpha must be > 0");
    require(finite_positive(beta), "dPLN: beta must be > 0");
    require(std::isfinite(mu), "dPLN: mu must be finite");
    require(finite_positive(sigma), "dPLN: sigma must be > 0");
    return Distribution(Family::DPLN, DplnParams{alpha, beta, mu, sigma});
}

Distribution Distribution::mixture(Family family, std::vector<MixtureComponent> components,
                                   std::vector<double> head_weights) {
    const int k = components_for(family);
    require(k >= 2, "mixture: family must be 2LN/2LL/3LN/3LL");
    require(static_cast<int>(components.size()) == k, "mixture: wrong component count");
    require(static_cast<int>(head_weights.size()) == k - 1,
            "mixture: expected k-1 leading weights");
    double sum = 0.0;
    for (double w : head_weights) {
        require(std::isfinite(w) && w >= 0.0 && w <= 1.0, "mixture: weight outside [0,1]");
        sum += w;
    }
    require(sum <= 1.0, "mixture: weights exceed 1");
    for (const auto& c : components) {
        require(std::isfinite(c.mu), "mixture: mu must be finite");
        require(finite_positive(c.sigma), "mixture: sigma must be > 0");
    }
    return Distribution(family, MixtureParams{family_mixture_base(family),
                                              std::move(components), std::move(head_weights)});
}

Distribution Distribution::from_params(Family family, std::span<const double> theta) {
    require(static_cast<int>(theta.size()) == family_param_count(family),
            "from_params: wrong parameter count");
    switch (family) {
        case Family::LN: return lognormal(theta[0], theta[1]);
        case Family::LL: return loglogistic(theta[0], theta[1]);
        case Family::DPLN: return dpln(theta[0], theta[1], theta[2], theta[3]);
        default: {
            const int k = components_for(family);
            std::vector<MixtureComponent> comps(k);
            for (int i = 0; i < k; ++i) comps[i] = {theta[2 * i], theta[2 * i + 1]};
            std::vector<double> head(theta.begin() + 2 * k, theta.end());
            return mixture(family, std::move(comps), std::move(head));
        }
    }
}

std::vector<double> Distribution::params() const {
    switch (family_) {
        case Family::LN: {
            const auto& p = as_ln();
            return {p.mu, p.sigma};
        }
        case Family::LL: {
            const auto& p = as_ll();
            return {p.mu, p.sigma};
        }
        case Family::DPLN: {
            const auto& p = as_dpln();
            return {p.alpha, p.beta, p.mu, p.sigma};
        }
        default: {
            const auto& m = as_mixture();
            std::vector<double> out;
            out.reserve(family_param_count(family_));
            for (const auto& c : m.components) {
                out.push_back(c.mu);
                out.push_back(c.sigma);
            }
            out.insert(out.end(), m.head_weights.begin(), m.head_weights.end());
            return out;
        }
    }
}

std::vector<std::string> Distribution::param_names() const {
    switch (family_) {
        case Family::LN:
        case Family::LL: return {"mu", "sigma"};
        case Family::DPLN: return {"alpha", "beta", "mu", "sigma"};
        default: {
            const int k = components_for(family_);
            std::vector<std::string> names;
            for (int i = 1; i <= k; ++i) {
                names.push_back("mu" + std::to_string(i));
                names.push_back("sigma" + std::to_string(i));
            }
            for (int i = 1; i < k; ++i) names.push_back("p" + std::to_string(i));
            return names;
        }
    }
}

std::vector<double> Distribution::weights() const {
    if (!family_is_mixture(family_)) return {1.0};
    const auto& m = as_mixture();
    std::vector<double> w(m.head_weights);
    w.push_back(1.0 - std::accumulate(w.begin(), w.end(), 0.0));
    return w;
}

Distribution Distribution::canonical() const {
    if (!family_is_mixture(family_)) return *this;
    const auto& m = as_mixture();
    const auto w = weights();
    const int k = static_cast<int>(m.components.size());
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (m.components[a].mu != m.components[b].mu)
            return m.components[a].mu < m.components[b].mu;
        return m.components[a].sigma < m.components[b].sigma;
    });
    std::vector<MixtureComponent> comps(k);
    std::vector<double> head(k - 1);
    for (int i = 0; i < k; ++i) comps[i] = m.components[order[i]];
    for (int i = 0; i < k - 1; ++i) head[i] = w[order[i]];
    return mixture(family_, std::move(comps), std::move(head));
}

// ---- evaluation -------------------------------------------------------------

namespace detail {

double log_likelihood_logx(Family family, const double* theta, std::span<const double> logs) {
    double total = 0.0;
    switch (family) {
        case Family::LN: {
            const double mu = theta[0], sigma = theta[1];
            if (!(sigma > 0.0)) return kNaN;
            const double c = -std::log(sigma) - kLogSqrt2Pi;
            const double inv = 1.0 / sigma;
            for (double y : logs) {
                const double z = (y - mu) * inv;
                total += -y + c - 0.5 * z * z;
            }
            return total;
        }
        case Family::LL: {
            const double mu = theta[0], sigma = theta[1];
            if (!(sigma > 0.0)) return kNaN;
            const double c = -std::log(sigma);
            const double inv = 1.0 / sigma;
            for (double y : logs) {
                const double a = std::fabs((y - mu) * inv);
                total += -y + c - a - 2.0 * std::log1p(std::exp(-a));
            }
            return total;
        }
        case Family::DPLN: {
            // Reed's two-erf-term density rewritten with Mills ratios,
            //   f(x) = ab/(a+b) (1/x) phi(z) [R(a s - z) + R(b s + z)],
            // which stays finite in log space for any x; the x^-a / x^b
            // growth factors live inside log R.
            const double alpha = theta[0], beta = theta[1], mu = theta[2], sigma = theta[3];
            if (!(alpha > 0.0 && beta > 0.0 && sigma > 0.0)) return kNaN;
            const double c = std::log(alpha) + std::log(beta) - std::log(alpha + beta);
            const double inv = 1.0 / sigma;
            for (double y : logs) {
                const double z = (y - mu) * inv;
                total += -y + c + norm_logpdf(z) +
                         logaddexp(log_mills(alpha * sigma - z), log_mills(beta * sigma + z));
            }
            return total;
        }
        default: {
            const int k = components_for(family);
            const bool ll = family_mixture_base(family) == Family::LL;
            double mu[3], inv[3], c[3], w[3];
            double wsum = 0.0;
            bool negative_weight = false;
            for (int j = 0; j < k; ++j) {
                const double sigma = theta[2 * j + 1];
                if (!(sigma > 0.0)) return kNaN;
                mu[j] = theta[2 * j];
                inv[j] = 1.0 / sigma;
                c[j] = ll ? -std::log(sigma) : -std::log(sigma) - kLogSqrt2Pi;
            }
            for (int j = 0; j < k - 1; ++j) {
                w[j] = theta[2 * k + j];
                wsum += w[j];
                negative_weight |= w[j] < 0.0;
            }
            w[k - 1] = 1.0 - wsum;
            negative_weight |= w[k - 1] < 0.0;
            double lw[3];
            if (!negative_weight)
                for (int j = 0; j < k; ++j)
                    lw[j] = w[j] > 0.0 ? std::log(w[j])
                                       : -std::numeric_limits<double>::infinity();
            for (double y : logs) {
                double lp[3];
                for (int j = 0; j < k; ++j) {
                    const double z = (y - mu[j]) * inv[j];
                    if (ll) {
                        const double a = std::fabs(z);
                        lp[j] = c[j] - a - 2.0 * std::log1p(std::exp(-a));
                    } else {
                        lp[j] = c[j] - 0.5 * z * z;
                    }
                }
                if (!negative_weight) {
                    double m = lw[0] + lp[0];
                    for (int j = 1; j < k; ++j) m = std::max(m, lw[j] + lp[j]);
                    double s = 0.0;
                    for (int j = 0; j < k; ++j)
                        if (w[j] != 0.0) s += std::exp(lw[j] + lp[j] - m);
                    total += -y + m + std::log(s);
                } else {
                    // Finite-difference probes can push a weight slightly below
                    // zero; a non-positive mixture density then yields NaN.
                    double m = lp[0];
                    for (int j = 1; j < k; ++j) m = std::max(m, lp[j]);
                    double s = 0.0;
                    for (int j = 0; j < k; ++j) s += w[j] * std::exp(lp[j] - m);
                    total += -y + m + std::log(s);
                }
            }
            return total;
        }
    }
}

double log_density_raw(Family family, const double* theta, double x) {
    const double y = std::log(x);
    return log_likelihood_logx(family, theta, std::span<const double>(&y, 1));
}

}  // namespace detail

double Distribution::log_density(double x) const {
    if (!(x > 0.0)) throw std::domain_error("log_density: x must be > 0");
    const auto theta = params();
    return detail::log_density_raw(family_, theta.data(), x);
}

namespace {

double cdf_at_log(const Distribution& d, double y) {
    switch (d.family()) {
        case Family::LN: {
            const auto& p = d.as_ln();
            return norm_cdf(ln_logcdf_arg(y, p.mu, p.sigma));
        }
        case Family::LL: {
            const auto& p = d.as_ll();
            return ll_cdf(y, p.mu, p.sigma);
        }
        case Family::DPLN: {
            const auto& p = d.as_dpln();
            return dpln_cdf(y, p.alpha, p.beta, p.mu, p.sigma);
        }
        default: {
            const auto& m = d.as_mixture();
            const auto w = d.weights();
            double f = 0.0;
            for (std::size_t i = 0; i < m.components.size(); ++i) {
                if (w[i] == 0.0) continue;
                f += w[i] * (m.base == Family::LL
                                 ? ll_cdf(y, m.components[i].mu, m.components[i].sigma)
                                 : norm_cdf((y - m.components[i].mu) / m.components[i].sigma));
            }
            return std::clamp(f, 0.0, 1.0);
        }
    }
}

}  // namespace

double Distribution::cdf(double x) const {
    if (!(x > 0.0)) throw std::domain_error("cdf: x must be > 0");
    return cdf_at_log(*this, std::log(x));
}

double Distribution::quantile(double q) const {
    if (!(q > 0.0 && q < 1.0)) throw std::domain_error("quantile: q outside (0,1)");
    switch (family_) {
        case Family::LN: {
            const auto& p = as_ln();
            return std::exp(p.mu + p.sigma * norm_quantile(q));
        }
        case Family::LL: {
            const auto& p = as_ll();
            return std::exp(p.mu + p.sigma * std::log(q / (1.0 - q)));
        }
        default:
            break;
    }
    // Bracketed bisection on y = ln x; the CDFs are monotone in y.
    double lo, hi;
    if (family_ == Family::DPLN) {
        const auto& p = as_dpln();
        lo = hi = p.mu;
        double step = std::max(p.sigma, 1.0);
        while (cdf_at_log(*this, lo) > q) {
            lo -= step;
            step *= 2.0;
        }
        step = std::max(p.sigma, 1.0);
        while (cdf_at_log(*this, hi) < q) {
            hi += step;
            step *= 2.0;
        }
    } else {
        const auto& m = as_mixture();
        const auto w = weights();
        lo = std::numeric_limits<double>::infinity();
        hi = -lo;
        for (std::size_t i = 0; i < m.components.size(); ++i) {
            if (w[i] == 0.0) continue;
            const double cq = m.base == Family::LL
                                  ? m.components[i].mu +
                                        m.components[i].sigma * std::log(q / (1.0 - q))
                                  : m.components[i].mu +
                                        m.components[i].sigma * norm_quantile(q);
            lo = std::min(lo, cq);
            hi = std::max(hi, cq);
        }
        // The component quantile hull brackets the mixture quantile.
        lo -= 1e-12;
        hi += 1e-12;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + std::fabs(lo) + std::fabs(hi));
         ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cdf_at_log(*this, mid) < q)
            lo = mid;
        else
            hi = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

std::vector<double> Distribution::sample(std::size_t n, std::uint64_t seed) const {
    if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
    Rng rng(seed);
    std::vector<double> out(n);
    switch (family_) {
        case Family::LN: {
            const auto& p = as_ln();
            for (auto& v : out) v = std::exp(p.mu + p.sigma * rng.normal());
            break;
        }
        case Family::LL: {
            const auto& p = as_ll();
            for (auto& v : out) {
                const double u = rng.uniform01();
                v = std::exp(p.mu + p.sigma * std::log(u / (1.0 - u)));
            }
            break;
        }
        case Family::DPLN: {
            // Generative form: ln X = mu + sigma Z + E1/alpha - E2/beta.
            const auto& p = as_dpln();
            for (auto& v : out) {
                const double z = rng.normal();
                const double e1 = rng.exponential();
                const double e2 = rng.exponential();
                v = std::exp(p.mu + p.sigma * z + e1 / p.alpha - e2 / p.beta);
            }
            break;
        }
        default: {
            const auto& m = as_mixture();
            const auto w = weights();
            for (auto& v : out) {
                const double u = rng.uniform01();
                double acc = 0.0;
                std::size_t pick = m.components.size() - 1;
                for (std::size_t i = 0; i < m.components.size(); ++i) {
                    acc += w[i];
                    if (u <= acc) {
                        pick = i;
                        break;
                    }
                }
                const auto& c = m.components[pick];
                if (m.base == Family::LL) {
                    const double t = rng.uniform01();
                    v = std::exp(c.mu + c.sigma * std::log(t / (1.0 - t)));
                } else {
                    v = std::exp(c.mu + c.sigma * rng.normal());
                }
            }
            break;
        }
    }
    return out;
}

}  // namespace csd
