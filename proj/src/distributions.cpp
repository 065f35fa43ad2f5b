#include "convsim/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "convsim/errors.hpp"

namespace convsim {

// ---------------------------------------------------------------------------
// TruncatedPareto

void TruncatedPareto::validate() const {
    if (!(a > 0.0) || !(b > a) || !(c > 0.0) || !std::isfinite(a) || !std::isfinite(b) ||
        !std::isfinite(c)) {
        throw parameter_error("TruncatedPareto requires 0 < a < b and c > 0 (got a=" +
                              std::to_string(a) + " b=" + std::to_string(b) +
                              " c=" + std::to_string(c) + ")");
    }
}

double TruncatedPareto::pdf(double x) const {
    validate();
    if (x < a || x > b) return 0.0;
    const double norm = std::pow(a, -c) - std::pow(b, -c);
    return c / norm * std::pow(x, -c - 1.0);
}

double TruncatedPareto::cdf(double x) const {
    validate();
    if (x <= a) return 0.0;
    if (x >= b) return 1.0;
    const double amc = std::pow(a, -c);
    return (amc - std::pow(x, -c)) / (amc - std::pow(b, -c));
}

double TruncatedPareto::quantile(double u) const {
    validate();
    if (u <= 0.0) return a;
    if (u >= 1.0) return b;
    const double amc = std::pow(a, -c);
    const double norm = amc - std::pow(b, -c);
    return std::pow(amc - u * norm, -1.0 / c);
}

double TruncatedPareto::mean() const {
    validate();
    const double amc = std::pow(a, -c);
    const double bmc = std::pow(b, -c);
    // The closed form has a removable singularity at c == 1; integrating
    // x f(x) there gives ln(b/a) / (a^-1 - b^-1).
    if (std::abs(c - 1.0) < 1e-9) return std::log(b / a) / (1.0 / a - 1.0 / b);
    return c / (c - 1.0) * (std::pow(a, 1.0 - c) - std::pow(b, 1.0 - c)) / (amc - bmc);
}

// ---------------------------------------------------------------------------
// ExponentialLaw

void ExponentialLaw::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw parameter_error("ExponentialLaw requires lambda > 0");
}

double ExponentialLaw::pdf(double x) const {
    validate();
    return x < 0.0 ? 0.0 : lambda * std::exp(-lambda * x);
}

double ExponentialLaw::cdf(double x) const {
    validate();
    return x <= 0.0 ? 0.0 : 1.0 - std::exp(-lambda * x);
}

double ExponentialLaw::quantile(double u) const {
    validate();
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return std::numeric_limits<double>::infinity();
    return -std::log1p(-u) / lambda;
}

double ExponentialLaw::sample(RandomStream& rng) const {
    validate();
    return -std::log(rng.uniform_pos()) / lambda;
}

// ---------------------------------------------------------------------------
// ParetoLaw

void ParetoLaw::validate() const {
    if (!(t_min > 0.0) || !(alpha > 0.0) || !std::isfinite(t_min) || !std::isfinite(alpha))
        throw parameter_error("ParetoLaw requires t_min > 0 and alpha > 0");
}

double ParetoLaw::pdf(double x) const {
    validate();
    if (x < t_min) return 0.0;
    return alpha / t_min * std::pow(x / t_min, -alpha - 1.0);
}

double ParetoLaw::cdf(double x) const {
    validate();
    if (x <= t_min) return 0.0;
    return 1.0 - std::pow(x / t_min, -alpha);
}

double ParetoLaw::quantile(double u) const {
    validate();
    if (u <= 0.0) return t_min;
    if (u >= 1.0) return std::numeric_limits<double>::infinity();
    return t_min * std::pow(1.0 - u, -1.0 / alpha);
}

double ParetoLaw::sample(RandomStream& rng) const {
    validate();
    return t_min * std::pow(rng.uniform_pos(), -1.0 / alpha);
}

// ---------------------------------------------------------------------------
// WeibullLaw

void WeibullLaw::validate() const {
    if (!(shape > 0.0) || !(scale > 0.0) || !std::isfinite(shape) || !std::isfinite(scale))
        throw parameter_error("WeibullLaw requires shape > 0 and scale > 0");
}

double WeibullLaw::pdf(double x) const {
    validate();
    if (x <= 0.0) return 0.0;
    const double z = x / scale;
    return shape / scale * std::pow(z, shape - 1.0) * std::exp(-std::pow(z, shape));
}

double WeibullLaw::cdf(double x) const {
    validate();
    return x <= 0.0 ? 0.0 : 1.0 - std::exp(-std::pow(x / scale, shape));
}

double WeibullLaw::quantile(double u) const {
    validate();
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return std::numeric_limits<double>::infinity();
    return scale * std::pow(-std::log1p(-u), 1.0 / shape);
}

double WeibullLaw::sample(RandomStream& rng) const {
    validate();
    return scale * std::pow(-std::log(rng.uniform_pos()), 1.0 / shape);
}

// ---------------------------------------------------------------------------
// Exposure helpers

double exposure_sample(const ExposureLaw& law, RandomStream& rng) {
    return std::visit([&](const auto& l) { return l.sample(rng); }, law);
}

double exposure_cdf(const ExposureLaw& law, double x) {
    return std::visit([&](const auto& l) { return l.cdf(x); }, law);
}

const char* to_string(ExposureFamily f) {
    return f == ExposureFamily::exponential ? "exponential" : "pareto";
}

// ---------------------------------------------------------------------------
// Estimators

namespace {

void require_positive(std::span<const double> xs, const char* who) {
    for (double x : xs)
        if (!(x > 0.0) || !std::isfinite(x))
            throw data_error(std::string(who) + ": samples must be positive and finite");
}

double sum_log(std::span<const double> xs) {
    double s = 0.0;
    for (double x : xs) s += std::log(x);
    return s;
}

}  // namespace

FitResult tp_mle(std::span<const double> samples, double a, double b) {
    const std::size_t n = samples.size();
    if (n < 10) throw data_error("tp_mle: need at least 10 samples");
    if (!(a > 0.0) || !(b > a)) throw parameter_error("tp_mle: need 0 < a < b");
    for (double x : samples)
        if (!(x >= a) || !(x <= b))
            throw data_error("tp_mle: sample outside [a, b]: " + std::to_string(x));

    const double S = sum_log(samples);
    const double nn = static_cast<double>(n);
    const double la = std::log(a), lb = std::log(b);

    // d/dc log L = n/c - n * A'(c)/A(c) - sum(log x),
    // A(c) = a^-c - b^-c,  A'(c) = -la*a^-c + lb*b^-c.
    const auto score = [&](double cc) {
        const double ac = std::pow(a, -cc), bc = std::pow(b, -cc);
        const double A = ac - bc;
        const double Ap = -la * ac + lb * bc;
        return nn / cc - nn * Ap / A - S;
    };

    double lo = 0.01, hi = 20.0;
    double f_lo = score(lo), f_hi = score(hi);
    if (!(f_lo > 0.0) || !(f_hi < 0.0)) {
        throw numeric_error(
            "tp_mle: score has no sign change on [0.01, 20] "
            "(degenerate likelihood; score(0.01)=" +
            std::to_string(f_lo) + ", score(20)=" + std::to_string(f_hi) + ")");
    }
    while (hi - lo > 1e-8) {
        const double mid = 0.5 * (lo + hi);
        (score(mid) > 0.0 ? lo : hi) = mid;
    }
    const double c_hat = 0.5 * (lo + hi);

    // Observed information: -d2/dc2 log L at the maximum.
    const double ac = std::pow(a, -c_hat), bc = std::pow(b, -c_hat);
    const double A = ac - bc;
    const double Ap = -la * ac + lb * bc;
    const double App = la * la * ac - lb * lb * bc;
    const double d2 = -nn / (c_hat * c_hat) - nn * (App * A - Ap * Ap) / (A * A);
    const double se = d2 < 0.0 ? std::sqrt(-1.0 / d2) : std::numeric_limits<double>::quiet_NaN();

    const double loglik = nn * (std::log(c_hat) - std::log(A)) - (c_hat + 1.0) * S;
    return FitResult{{"c"}, {c_hat}, {se}, loglik, n};
}

FitResult weibull_mle(std::span<const double> samples) {
    const std::size_t n = samples.size();
    if (n < 10) throw data_error("weibull_mle: need at least 10 samples");
    require_positive(samples, "weibull_mle");

    const double nn = static_cast<double>(n);
    std::vector<double> logs(n);
    for (std::size_t i = 0; i < n; ++i) logs[i] = std::log(samples[i]);
    const double mean_log = std::accumulate(logs.begin(), logs.end(), 0.0) / nn;
    const double log_max = *std::max_element(logs.begin(), logs.end());

    // Profile score for the shape,
    //   h(k) = sum(x^k log x)/sum(x^k) - mean(log x) - 1/k,
    // strictly increasing in k (weighted variance of log x plus 1/k^2),
    // so a bracketed Newton solve is safe.  Weights are normalized by
    // the largest sample to avoid overflow in x^k.
    const auto score = [&](double k, double* deriv) {
        double s0 = 0.0, s1 = 0.0, s2 = 0.0;
        for (double l : logs) {
            const double w = std::exp(k * (l - log_max));
            s0 += w;
            s1 += w * l;
            s2 += w * l * l;
        }
        const double wl = s1 / s0;
        if (deriv) *deriv = (s2 / s0 - wl * wl) + 1.0 / (k * k);
        return wl - mean_log - 1.0 / k;
    };

    double lo = 1e-3;
    if (!(score(lo, nullptr) < 0.0))
        throw numeric_error("weibull_mle: profile score ill-behaved at small shape");
    double hi = 2.0;
    while (score(hi, nullptr) < 0.0) {
        hi *= 2.0;
        if (hi > 1e6) throw numeric_error("weibull_mle: shape diverged (degenerate sample?)");
    }

    double k = std::min(hi, std::max(lo, 1.0));
    bool converged = false;
    for (int iter = 0; iter < 200; ++iter) {
        double deriv = 0.0;
        const double h = score(k, &deriv);
        (h > 0.0 ? hi : lo) = k;
        double k_next = deriv > 0.0 ? k - h / deriv : 0.5 * (lo + hi);
        if (!(k_next > lo) || !(k_next < hi)) k_next = 0.5 * (lo + hi);
        if (std::abs(k_next - k) < 1e-10 * std::max(1.0, k)) {
            k = k_next;
            converged = true;
            break;
        }
        k = k_next;
    }
    if (!converged) throw numeric_error("weibull_mle: no convergence in 200 iterations");

    double s0 = 0.0;
    for (double l : logs) s0 += std::exp(k * (l - log_max));
    const double scale = std::exp(log_max + std::log(s0 / nn) / k);

    const auto loglik_at = [&](double kk, double ss) {
        double acc = nn * (std::log(kk) - kk * std::log(ss)) + (kk - 1.0) * nn * mean_log;
        for (double x : samples) acc -= std::pow(x / ss, kk);
        return acc;
    };
    const double ll = loglik_at(k, scale);

    // Standard errors from a central-difference Hessian of the
    // log-likelihood in (shape, scale).
    const double hk = 1e-5 * k, hs = 1e-5 * scale;
    const double dkk =
        (loglik_at(k + hk, scale) - 2.0 * ll + loglik_at(k - hk, scale)) / (hk * hk);
    const double dss =
        (loglik_at(k, scale + hs) - 2.0 * ll + loglik_at(k, scale - hs)) / (hs * hs);
    const double dks = (loglik_at(k + hk, scale + hs) - loglik_at(k + hk, scale - hs) -
                        loglik_at(k - hk, scale + hs) + loglik_at(k - hk, scale - hs)) /
                       (4.0 * hk * hs);
    const double det = dkk * dss - dks * dks;
    double se_k = std::numeric_limits<double>::quiet_NaN();
    double se_s = std::numeric_limits<double>::quiet_NaN();
    if (det > 0.0 && dkk < 0.0) {  // negative definite
        se_k = std::sqrt(-dss / det);
        se_s = std::sqrt(-dkk / det);
    }

    return FitResult{{"shape", "scale"}, {k, scale}, {se_k, se_s}, ll, n};
}

FitResult exponential_mle(std::span<const double> samples) {
    const std::size_t n = samples.size();
    if (n < 2) throw data_error("exponential_mle: need at least 2 samples");
    require_positive(samples, "exponential_mle");
    const double nn = static_cast<double>(n);
    const double sum = std::accumulate(samples.begin(), samples.end(), 0.0);
    const double lambda = nn / sum;
    const double ll = nn * std::log(lambda) - lambda * sum;
    return FitResult{{"lambda"}, {lambda}, {lambda / std::sqrt(nn)}, ll, n};
}

FitResult pareto_mle(std::span<const double> samples, double t_min) {
    const std::size_t n = samples.size();
    if (n < 2) throw data_error("pareto_mle: need at least 2 samples");
    require_positive(samples, "pareto_mle");
    if (!(t_min > 0.0)) throw parameter_error("pareto_mle: t_min must be > 0");
    double s = 0.0;
    for (double x : samples) {
        if (x < t_min) throw data_error("pareto_mle: sample below t_min");
        s += std::log(x / t_min);
    }
    if (!(s > 0.0)) throw numeric_error("pareto_mle: degenerate sample (all at t_min)");
    const double nn = static_cast<double>(n);
    const double alpha = nn / s;
    if (alpha > 1e6) throw numeric_error("pareto_mle: alpha diverged");
    const double ll = nn * std::log(alpha) + nn * alpha * std::log(t_min) -
                      (alpha + 1.0) * (s + nn * std::log(t_min));
    return FitResult{{"alpha", "t_min"}, {alpha, t_min}, {alpha / std::sqrt(nn), 0.0}, ll, n};
}

ExposureFit fit_exposure(std::span<const double> samples) {
    if (samples.size() < 30) throw data_error("fit_exposure: need at least 30 samples");
    const double t_min = *std::min_element(samples.begin(), samples.end());
    FitResult exp_fit = exponential_mle(samples);
    FitResult par_fit = pareto_mle(samples, t_min);
    const double gap = std::abs(exp_fit.loglik - par_fit.loglik);
    if (exp_fit.loglik >= par_fit.loglik)
        return ExposureFit{ExposureFamily::exponential, std::move(exp_fit), std::move(par_fit), gap};
    return ExposureFit{ExposureFamily::pareto, std::move(par_fit), std::move(exp_fit), gap};
}

}  // namespace convsim
