#include "convsim/renewal.hpp"

#include <algorithm>
#include <cmath>

#include "convsim/errors.hpp"

namespace convsim {

RenewalTrace simulate_renewal(const TruncatedPareto& law, double horizon, RandomStream& rng) {
    law.validate();
    if (!(horizon > 0.0)) throw parameter_error("simulate_renewal: horizon must be > 0");
    RenewalTrace trace;
    trace.horizon = horizon;
    if (horizon >= law.a) trace.event_times.reserve(static_cast<std::size_t>(horizon / law.mean()) + 4);
    double t = 0.0;
    for (;;) {
        t += law.sample(rng);
        if (t > horizon) break;
        trace.event_times.push_back(t);
    }
    return trace;
}

ForwardRecurrence::ForwardRecurrence(const TruncatedPareto& waiting_law) : law_(waiting_law) {
    law_.validate();
    mu_ = law_.mean();
    amc_ = std::pow(law_.a, -law_.c);
    bmc_ = std::pow(law_.b, -law_.c);
    norm_ = amc_ - bmc_;
    one_minus_c_ = 1.0 - law_.c;
    c_is_one_ = std::abs(law_.c - 1.0) < 1e-9;
    a_pow_ = c_is_one_ ? 0.0 : std::pow(law_.a, one_minus_c_);
}

double ForwardRecurrence::survival_integral(double y) const {
    // S(x) = (x^-c - b^-c) / (a^-c - b^-c) on [a, b]
    const double inner = c_is_one_ ? std::log(y / law_.a)
                                   : (std::pow(y, one_minus_c_) - a_pow_) / one_minus_c_;
    return (inner - bmc_ * (y - law_.a)) / norm_;
}

double ForwardRecurrence::cdf(double y) const {
    if (y <= 0.0) return 0.0;
    if (y >= law_.b) return 1.0;
    if (y <= law_.a) return y / mu_;
    return std::min(1.0, (law_.a + survival_integral(y)) / mu_);
}

double ForwardRecurrence::pdf(double y) const {
    if (y < 0.0 || y > law_.b) return 0.0;
    if (y <= law_.a) return 1.0 / mu_;
    return (std::pow(y, -law_.c) - bmc_) / norm_ / mu_;
}

double ForwardRecurrence::quantile(double u) const {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return law_.b;
    if (u <= law_.a / mu_) return u * mu_;  // flat-density segment below a

    // Solve cdf(y) = u on (a, b): Newton from an initial guess that
    // ignores the b^-c correction, with a bisection bracket as backstop.
    double lo = law_.a, hi = law_.b;
    double y;
    {
        const double target = u * mu_ - law_.a;  // = integral over [a, y] of S
        if (c_is_one_) {
            y = law_.a * std::exp(target * norm_);
        } else {
            const double base = a_pow_ + one_minus_c_ * target * norm_;
            y = base > 0.0 ? std::pow(base, 1.0 / one_minus_c_) : 0.5 * (lo + hi);
        }
        if (!(y > lo) || !(y < hi)) y = 0.5 * (lo + hi);
    }
    for (int iter = 0; iter < 100; ++iter) {
        const double f = cdf(y) - u;
        if (f > 0.0) hi = y; else lo = y;
        const double g = pdf(y);
        const double step = g > 0.0 ? f / g : 0.0;
        double y_next = y - step;
        if (!(y_next > lo) || !(y_next < hi)) y_next = 0.5 * (lo + hi);
        if (std::abs(y_next - y) < 1e-12 * law_.b) return y_next;
        y = y_next;
    }
    return y;
}

double forward_recurrence_sample(const TruncatedPareto& law, double t0, RandomStream& rng) {
    law.validate();
    if (!(t0 > 0.0)) throw parameter_error("forward_recurrence_sample: t0 must be > 0");
    double t = 0.0;
    for (;;) {
        t += law.sample(rng);
        if (t > t0) return t - t0;
    }
}

}  // namespace convsim
