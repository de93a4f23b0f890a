#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace csd {

// Gaussian-mixture EM on the logs of the observations, which is exactly the
// ML problem for a lognormal mixture up to the fixed Jacobian term. Exposed
// as a steppable object so the per-iteration ascent of the log-likelihood can
// be observed directly.
class LognormalMixtureEm {
public:
    struct Component {
        double mu;
        double sigma;
        double weight;
    };

    LognormalMixtureEm(std::span<const double> data, std::vector<Component> initial);

    // One E+M sweep; returns the lognormal-mixture log-likelihood of the
    // updated parameters. Components that receive zero responsibility mass
    // are frozen rather than divided by zero, so a weight pinned at 1
    // cleanly reduces the fit to a single lognormal.
    double step();

    double log_likelihood() const { return log_likelihood_; }
    const std::vector<Component>& components() const { return components_; }

private:
    std::vector<double> logs_;
    double jacobian_;  // -sum of logs: converts Gaussian to lognormal likelihood
    std::vector<Component> components_;
    std::vector<double> responsibilities_;  // n x k, row-major
    double log_likelihood_;
};

}  // namespace csd
