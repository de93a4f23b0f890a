#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace csd {

// The seven families, in canonical order (used for tie-breaking and reports).
enum class Family { LN, LL, DPLN, LN2, LL2, LN3, LL3 };

inline constexpr std::array<Family, 7> kAllFamilies = {
    Family::LN, Family::LL, Family::DPLN, Family::LN2,
    Family::LL2, Family::LN3, Family::LL3};

std::string_view family_name(Family f);  // "LN", "LL", "dPLN", "2LN", ...
std::optional<Family> family_from_name(std::string_view name);

// Free parameters: LN/LL 2, dPLN 4, two-component mixtures 5, three-component 8.
int family_param_count(Family f);
bool family_is_mixture(Family f);
int family_component_count(Family f);  // 1 for non-mixtures
Family family_mixture_base(Family f);  // LN or LL for mixtures

struct LnParams {
    double mu;
    double sigma;
};

struct LlParams {
    double mu;
    double sigma;
};

struct DplnParams {
    double alpha;  // upper-tail Pareto exponent
    double beta;   // lower-tail Pareto exponent
    double mu;
    double sigma;
};

struct MixtureComponent {
    double mu;
    double sigma;
};

// Convex combination of 2 or 3 lognormal or loglogistic components. Only the
// leading k-1 weights are stored; the last is 1 minus their sum.
struct MixtureParams {
    Family base;  // Family::LN or Family::LL
    std::vector<MixtureComponent> components;
    std::vector<double> head_weights;
};

// One of the seven city-size models with a fixed, validated parameter set.
// Validation happens at construction only; evaluation paths are unchecked and
// pure, so instances are safe to share across threads.
class Distribution {
public:
    static Distribution lognormal(double mu, double sigma);
    static Distribution loglogistic(double mu, double sigma);
    static Distribution dpln(double alpha, double beta, double mu, double sigma);
    static Distribution mixture(Family family, std::vector<MixtureComponent> components,
                                std::vector<double> head_weights);
    // Builds from the flattened parameter vector in canonical order:
    //   LN/LL:    mu, sigma
    //   dPLN:     alpha, beta, mu, sigma
    //   mixtures: mu1, sigma1, ..., muk, sigmak, p1[, p2]
    static Distribution from_params(Family family, std::span<const double> theta);

    Family family() const { return family_; }
    std::vector<double> params() const;
    std::vector<std::string> param_names() const;
    // All k mixture weights (the implicit last one included); {1} otherwise.
    std::vector<double> weights() const;

    double log_density(double x) const;
    double density(double x) const { return std::exp(log_density(x)); }
    double cdf(double x) const;
    double quantile(double q) const;
    std::vector<double> sample(std::size_t n, std::uint64_t seed) const;

    const LnParams& as_ln() const { return std::get<LnParams>(payload_); }
    const LlParams& as_ll() const { return std::get<LlParams>(payload_); }
    const DplnParams& as_dpln() const { return std::get<DplnParams>(payload_); }
    const MixtureParams& as_mixture() const { return std::get<MixtureParams>(payload_); }

    // Mixture copy with components reordered by ascending mu, so reported
    // estimates do not depend on label switching; identity otherwise.
    Distribution canonical() const;

    bool operator==(const Distribution&) const = default;

private:
    using Payload = std::variant<LnParams, LlParams, DplnParams, MixtureParams>;
    Distribution(Family f, Payload p) : family_(f), payload_(std::move(p)) {}

    Family family_;
    Payload payload_;
};

namespace detail {
// Unchecked total log-likelihood over pre-logged observations y = ln x, on the
// flattened parameter vector. Used by the optimizer and the finite-difference
// Hessian, where parameters may sit slightly outside the valid region (the
// result is then NaN, never UB). Scale constants are hoisted out of the data
// loop, so this is also the hot path of every fit.
double log_likelihood_logx(Family family, const double* theta, std::span<const double> logs);

// Single-observation convenience wrapper.
double log_density_raw(Family family, const double* theta, double x);
}  // namespace detail

}  // namespace csd
