#pragma once

#include <vector>

#include "convsim/distributions.hpp"
#include "convsim/random.hpp"

namespace convsim {

// A single user's comment epochs on [0, horizon]; inter-arrival times
// are i.i.d. draws from the waiting-time law.
struct RenewalTrace {
    std::vector<double> event_times;  // strictly increasing, all <= horizon
    double horizon = 0.0;
};

RenewalTrace simulate_renewal(const TruncatedPareto& law, double horizon, RandomStream& rng);

// Long-run law of the excess time Y = time from an observation instant
// to the next renewal, for inter-arrivals drawn from `law`:
//
//   P(Y <= y) = (1/mu) * integral_0^y S(x) dx,     0 <= y <= b,
//
// with S the inter-arrival survival function and mu its mean.  The
// integral is evaluated piecewise in closed form; the density behaves
// as y^-c on (a, b).
class ForwardRecurrence {
public:
    explicit ForwardRecurrence(const TruncatedPareto& waiting_law);

    const TruncatedPareto& law() const { return law_; }
    double mean_waiting() const { return mu_; }

    double cdf(double y) const;
    double pdf(double y) const;      // S(y)/mu on [0, b], 0 beyond
    double quantile(double u) const; // inverse cdf (hybrid Newton/bisection)
    double sample(RandomStream& rng) const { return quantile(rng.uniform()); }

private:
    double survival_integral(double y) const;  // integral_a^y S(x) dx

    TruncatedPareto law_;
    double mu_;
    double amc_, bmc_, norm_;     // a^-c, b^-c, their difference
    double a_pow_, one_minus_c_;  // a^(1-c) and 1-c, for the inner integral
    bool c_is_one_;
};

inline double forward_recurrence_cdf(const ForwardRecurrence& fr, double y) { return fr.cdf(y); }

// Excess time past t0 by direct event generation: runs the renewal
// process from age zero until it crosses t0 and returns the overshoot.
// For t0 >> mu this converges to ForwardRecurrence::cdf; no
// equilibrium shortcut is taken here so that the convergence itself
// can be checked.
double forward_recurrence_sample(const TruncatedPareto& law, double t0, RandomStream& rng);

}  // namespace convsim
