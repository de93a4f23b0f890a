#include "csd/em.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "csd/math.hpp"

namespace csd {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

LognormalMixtureEm::LognormalMixtureEm(std::span<const double> data,
                                       std::vector<Component> initial)
    : components_(std::move(initial)), log_likelihood_(kNegInf) {
    if (data.empty()) throw std::invalid_argument("em: empty data");
    if (components_.size() < 2 || components_.size() > 3)
        throw std::invalid_argument("em: expected 2 or 3 components");
    logs_.reserve(data.size());
    jacobian_ = 0.0;
    for (double x : data) {
        if (!(x > 0.0)) throw std::domain_error("em: data must be > 0");
        const double y = std::log(x);
        logs_.push_back(y);
        jacobian_ -= y;
    }
    responsibilities_.assign(logs_.size() * components_.size(), 0.0);
    log_likelihood_ = evaluate(nullptr);
}

// Gaussian-mixture log-likelihood of the current components on the logs,
// shifted by the Jacobian term; optionally fills responsibilities.
double LognormalMixtureEm::evaluate(double* responsibilities) const {
    const std::size_t n = logs_.size();
    const std::size_t k = components_.size();
    double lw[3], ls[3], inv[3];
    for (std::size_t j = 0; j < k; ++j) {
        const auto& c = components_[j];
        lw[j] = c.weight > 0.0 ? std::log(c.weight) : kNegInf;
        ls[j] = std::log(c.sigma);
        inv[j] = 1.0 / c.sigma;
    }
    double loglik = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double lp[3];
        double m = kNegInf;
        for (std::size_t j = 0; j < k; ++j) {
            const double z = (logs_[i] - components_[j].mu) * inv[j];
            lp[j] = lw[j] - ls[j] - kLogSqrt2Pi - 0.5 * z * z;
            m = std::max(m, lp[j]);
        }
        double s = 0.0;
        for (std::size_t j = 0; j < k; ++j) s += std::exp(lp[j] - m);
        const double li = m + std::log(s);
        loglik += li;
        if (responsibilities)
            for (std::size_t j = 0; j < k; ++j)
                responsibilities[i * k + j] = std::exp(lp[j] - li);
    }
    return loglik + jacobian_;
}

double LognormalMixtureEm::step() {
    const std::size_t n = logs_.size();
    const std::size_t k = components_.size();

    evaluate(responsibilities_.data());

    for (std::size_t j = 0; j < k; ++j) {
        double mass = 0.0, mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            mass += responsibilities_[i * k + j];
            mean += responsibilities_[i * k + j] * logs_[i];
        }
        if (mass <= 0.0) {
            components_[j].weight = 0.0;  // frozen dead component
            continue;
        }
        mean /= mass;
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = logs_[i] - mean;
            var += responsibilities_[i * k + j] * d * d;
        }
        components_[j].weight = mass / static_cast<double>(n);
        components_[j].mu = mean;
        components_[j].sigma = std::sqrt(var / mass);
    }

    log_likelihood_ = evaluate(nullptr);
    return log_likelihood_;
}

}  // namespace csd
