#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "convsim/random.hpp"

namespace convsim {

// Upper-truncated Pareto law on [a, b]:
//
//   f(x) = c / (a^-c - b^-c) * x^(-c-1),          a <= x <= b
//   F(x) = (a^-c - x^-c) / (a^-c - b^-c)
//
// Used as the waiting-time law between two consecutive comments from
// the same user.
struct TruncatedPareto {
    double a = 1.0;  // lower bound of the support
    double b = 2.0;  // upper bound (finite-size cutoff)
    double c = 1.0;  // tail exponent, density decays as x^(-c-1)

    void validate() const;  // throws parameter_error

    double pdf(double x) const;
    double cdf(double x) const;
    double quantile(double u) const;  // inverse of cdf, u in [0, 1]
    // Expectation; uses the logarithmic limit form at c == 1.
    double mean() const;
    double sample(RandomStream& rng) const { return quantile(rng.uniform()); }
};

struct ExponentialLaw {
    double lambda = 1.0;  // rate

    void validate() const;
    double pdf(double x) const;
    double cdf(double x) const;
    double quantile(double u) const;
    double mean() const { return 1.0 / lambda; }
    double sample(RandomStream& rng) const;
};

// Unbounded Pareto law, support [t_min, inf):  P(X > x) = (x/t_min)^-alpha.
struct ParetoLaw {
    double t_min = 1.0;
    double alpha = 1.0;

    void validate() const;
    double pdf(double x) const;
    double cdf(double x) const;
    double quantile(double u) const;
    double sample(RandomStream& rng) const;
};

struct WeibullLaw {
    double shape = 1.0;  // k'
    double scale = 1.0;  // lambda'

    void validate() const;
    double pdf(double x) const;
    double cdf(double x) const;
    double quantile(double u) const;
    double sample(RandomStream& rng) const;
};

// Exposure durations are either exponential (fixed removal hazard) or
// Pareto (ranking-driven removal); which one is site-specific.
using ExposureLaw = std::variant<ExponentialLaw, ParetoLaw>;

double exposure_sample(const ExposureLaw& law, RandomStream& rng);
double exposure_cdf(const ExposureLaw& law, double x);

// Result of a maximum-likelihood fit.  params/stderrs are parallel to
// param_names; loglik is the maximized log-likelihood.
struct FitResult {
    std::vector<std::string> param_names;
    std::vector<double> params;
    std::vector<double> stderrs;  // from observed Fisher information
    double loglik = 0.0;
    std::size_t n = 0;

    double param(std::size_t i) const { return params.at(i); }
};

// MLE of the truncated-Pareto exponent c with the bounds held fixed
// (a chosen by the caller, b typically the largest observation).
// Solves the one-dimensional score equation by bisection on
// c in [0.01, 20] to tolerance 1e-8.
FitResult tp_mle(std::span<const double> samples, double a, double b);

// Weibull MLE via the profile-likelihood shape equation, iterated to
// 1e-10 (at most 200 steps); the scale then follows in closed form.
FitResult weibull_mle(std::span<const double> samples);

FitResult exponential_mle(std::span<const double> samples);

// Pareto MLE with t_min fixed (defaults to the smallest observation).
FitResult pareto_mle(std::span<const double> samples, double t_min);

enum class ExposureFamily { exponential, pareto };

struct ExposureFit {
    ExposureFamily family;
    FitResult fit;          // the winning family's fit
    FitResult runner_up;    // the other family, for reporting
    double loglik_gap = 0;  // winner minus runner-up, >= 0
};

// Fits both exposure families by MLE and selects the one with the
// higher log-likelihood (equal parameter counts once t_min is pinned
// to the sample minimum, so raw comparison is enough).
ExposureFit fit_exposure(std::span<const double> samples);

const char* to_string(ExposureFamily f);

}  // namespace convsim
