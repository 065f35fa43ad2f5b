#include "convsim/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "convsim/errors.hpp"

namespace convsim {

const char* to_string(TailClass t) {
    switch (t) {
        case TailClass::heavy: return "heavy";
        case TailClass::light: return "light";
        default: return "exponential";
    }
}

CurvePoints ccdf(std::span<const double> samples) {
    if (samples.empty()) throw data_error("ccdf: empty sample");
    std::vector<double> xs(samples.begin(), samples.end());
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    CurvePoints out;
    std::size_t i = 0;
    while (i < xs.size()) {
        std::size_t j = i;
        while (j < xs.size() && xs[j] == xs[i]) ++j;
        out.points.emplace_back(xs[i], static_cast<double>(xs.size() - j) / n);
        i = j;
    }
    return out;
}

CurvePoints log_binned_density(std::span<const double> samples, unsigned bins_per_decade) {
    if (samples.empty()) throw data_error("log_binned_density: empty sample");
    if (bins_per_decade == 0) throw parameter_error("log_binned_density: bins_per_decade must be > 0");
    for (double x : samples)
        if (!(x > 0.0)) throw data_error("log_binned_density: samples must be positive");

    const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
    const double bpd = static_cast<double>(bins_per_decade);
    // Bin edges at 10^(k/bpd), aligned to the decade grid.
    const long k_lo = static_cast<long>(std::floor(std::log10(*mn) * bpd + 1e-12));
    const long k_hi = static_cast<long>(std::floor(std::log10(*mx) * bpd + 1e-12)) + 1;
    const std::size_t nbins = static_cast<std::size_t>(k_hi - k_lo);

    std::vector<std::size_t> counts(nbins, 0);
    for (double x : samples) {
        long k = static_cast<long>(std::floor(std::log10(x) * bpd + 1e-12)) - k_lo;
        if (k < 0) k = 0;
        if (k >= static_cast<long>(nbins)) k = static_cast<long>(nbins) - 1;
        counts[static_cast<std::size_t>(k)] += 1;
    }

    const double n = static_cast<double>(samples.size());
    CurvePoints out;
    for (std::size_t i = 0; i < nbins; ++i) {
        if (counts[i] == 0) continue;
        const double lo = std::pow(10.0, static_cast<double>(k_lo + static_cast<long>(i)) / bpd);
        const double hi = std::pow(10.0, static_cast<double>(k_lo + static_cast<long>(i) + 1) / bpd);
        const double density = static_cast<double>(counts[i]) / (n * (hi - lo));
        out.points.emplace_back(std::sqrt(lo * hi), density);
    }
    return out;
}

namespace {

RegressionFit ols(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    const double nn = static_cast<double>(n);
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / nn;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / nn;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (!(sxx > 0.0)) throw data_error("regression: degenerate x values");
    RegressionFit fit;
    fit.n = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        sse += r * r;
    }
    fit.stderr_slope = n > 2 ? std::sqrt(sse / (nn - 2.0) / sxx) : 0.0;
    fit.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
    return fit;
}

}  // namespace

RegressionFit loglog_regression(const CurvePoints& curve) {
    if (curve.size() < 3) throw data_error("loglog_regression: need at least 3 points");
    std::vector<double> xs, ys;
    xs.reserve(curve.size());
    ys.reserve(curve.size());
    for (const auto& [x, y] : curve.points) {
        if (!(x > 0.0) || !(y > 0.0))
            throw data_error("loglog_regression: coordinates must be positive");
        xs.push_back(std::log(x));
        ys.push_back(std::log(y));
    }
    return ols(xs, ys);
}

RegressionFit semilog_regression(const CurvePoints& curve) {
    if (curve.size() < 3) throw data_error("semilog_regression: need at least 3 points");
    std::vector<double> xs, ys;
    for (const auto& [x, y] : curve.points) {
        if (!(y > 0.0)) continue;  // CCDF curves end at zero
        xs.push_back(x);
        ys.push_back(std::log(y));
    }
    if (xs.size() < 3) throw data_error("semilog_regression: too few positive points");
    return ols(xs, ys);
}

double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw data_error("ks_distance: empty sample");
    std::vector<double> xs(samples.begin(), samples.end());
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

double discrete_ks_distance(std::span<const double> samples,
                            const std::function<double(double)>& cdf_at) {
    if (samples.empty()) throw data_error("discrete_ks_distance: empty sample");
    std::vector<double> xs(samples.begin(), samples.end());
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    std::size_t i = 0;
    while (i < xs.size()) {
        std::size_t j = i;
        while (j < xs.size() && xs[j] == xs[i]) ++j;
        d = std::max(d, std::abs(static_cast<double>(j) / n - cdf_at(xs[i])));
        i = j;
    }
    return d;
}

double quantile(std::span<const double> samples, double q) {
    if (samples.empty()) throw data_error("quantile: empty sample");
    std::vector<double> xs(samples.begin(), samples.end());
    std::sort(xs.begin(), xs.end());
    if (q <= 0.0) return xs.front();
    if (q >= 1.0) return xs.back();
    const double pos = q * static_cast<double>(xs.size() - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    return i + 1 < xs.size() ? xs[i] * (1.0 - frac) + xs[i + 1] * frac : xs[i];
}

CurvePoints clip_curve(const CurvePoints& curve, double lo, double hi) {
    CurvePoints out;
    for (const auto& p : curve.points)
        if (p.first >= lo && p.first <= hi) out.points.push_back(p);
    return out;
}

TailVerdict tail_classify(std::span<const double> samples, double eps) {
    if (samples.size() < 100) throw data_error("tail_classify: need at least 100 samples");

    TailVerdict v;
    v.evidence.weibull_fit = weibull_mle(samples);
    v.evidence.weibull =
        WeibullLaw{v.evidence.weibull_fit.param(0), v.evidence.weibull_fit.param(1)};

    const double shape = v.evidence.weibull.shape;
    v.shape_verdict = shape < 1.0 - eps   ? TailClass::heavy
                      : shape > 1.0 + eps ? TailClass::light
                                          : TailClass::exponential;

    // Exponential reference line fitted by MLE; a tail an order of
    // magnitude above it at the extreme points is not exponentially
    // bounded, whatever the Weibull fit says.
    const double mean =
        std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
    const double lambda_hat = 1.0 / mean;
    const CurvePoints curve = ccdf(samples);
    v.evidence.semilog = semilog_regression(curve);

    std::vector<const std::pair<double, double>*> positive;
    for (const auto& p : curve.points)
        if (p.second > 0.0) positive.push_back(&p);
    if (positive.size() >= 12) {
        const auto log10_ratio = [&](const std::pair<double, double>& p) {
            return std::log10(p.second) + lambda_hat * p.first / std::log(10.0);
        };
        std::vector<double> top;
        for (std::size_t i = positive.size() - 10; i < positive.size(); ++i)
            top.push_back(log10_ratio(*positive[i]));
        std::sort(top.begin(), top.end());
        v.evidence.tail_log10_ratio_last = log10_ratio(*positive.back());
        v.evidence.tail_log10_ratio_median = top[top.size() / 2];
        v.evidence.above_exponential_line =
            v.evidence.tail_log10_ratio_last >= 1.0 && v.evidence.tail_log10_ratio_median >= 1.0;
    }

    v.verdict = v.evidence.above_exponential_line ? TailClass::heavy : v.shape_verdict;
    return v;
}

// ---------------------------------------------------------------------------
// Growth curves

namespace {

GrowthCurves growth_on_grid(std::span<const Thread> threads, double t_lo, double t_hi,
                            unsigned n_grid, double min_active_fraction) {
    if (!(t_hi > t_lo) || n_grid < 3) throw data_error("growth_curves: degenerate time grid");
    const double ratio = std::pow(t_hi / t_lo, 1.0 / static_cast<double>(n_grid - 1));
    std::vector<double> grid(n_grid);
    for (unsigned i = 0; i < n_grid; ++i) grid[i] = t_lo * std::pow(ratio, i);
    grid.back() = t_hi;

    const std::size_t min_active = std::max<std::size_t>(
        1, static_cast<std::size_t>(min_active_fraction * static_cast<double>(threads.size())));

    GrowthCurves out;
    for (unsigned i = 0; i < n_grid; ++i) {
        const double t = grid[i];
        const double cell_lo = i == 0 ? 0.0 : grid[i - 1];
        std::size_t active = 0;
        std::size_t cum = 0;    // comments at time <= t in active threads
        std::size_t in_cell = 0;
        for (const Thread& th : threads) {
            if (th.exposure_duration < t) continue;
            ++active;
            for (std::size_t e = 1; e < th.events.size(); ++e) {
                const double et = th.events[e].time;
                if (et <= t) ++cum;
                if (et > cell_lo && et <= t) ++in_cell;
            }
        }
        if (active < min_active) continue;
        const double mean_cum = static_cast<double>(cum) / static_cast<double>(active);
        if (mean_cum > 0.0) out.n_of_t.points.emplace_back(t, mean_cum);
        if (i > 0 && in_cell > 0) {
            const double width = t - cell_lo;
            const double rate = static_cast<double>(in_cell) / static_cast<double>(active) / width;
            out.dn_dt.points.emplace_back(std::sqrt(cell_lo * t), rate);
        }
    }
    return out;
}

}  // namespace

GrowthCurves growth_curves(const Thread& thread, unsigned n_grid) {
    if (thread.comment_count() < 2) throw data_error("growth_curves: need at least 2 comments");
    double t_lo = 0.0, t_hi = 0.0;
    for (std::size_t e = 1; e < thread.events.size(); ++e) {
        const double t = thread.events[e].time;
        if (t <= 0.0) continue;
        if (t_lo == 0.0 || t < t_lo) t_lo = t;
        t_hi = std::max(t_hi, t);
    }
    if (!(t_hi > t_lo)) throw data_error("growth_curves: all events at one instant");
    return growth_on_grid({&thread, 1}, t_lo, t_hi, n_grid, 0.0);
}

GrowthCurves growth_curves(std::span<const Thread> threads, unsigned n_grid,
                           double min_active_fraction) {
    double t_lo = 0.0, t_hi = 0.0;
    std::size_t total = 0;
    for (const Thread& th : threads) {
        for (std::size_t e = 1; e < th.events.size(); ++e) {
            const double t = th.events[e].time;
            if (t <= 0.0) continue;
            ++total;
            if (t_lo == 0.0 || t < t_lo) t_lo = t;
            t_hi = std::max(t_hi, t);
        }
    }
    if (total < 2 || !(t_hi > t_lo)) throw data_error("growth_curves: too few events");
    return growth_on_grid(threads, t_lo, t_hi, n_grid, min_active_fraction);
}

// ---------------------------------------------------------------------------
// CSV output

namespace {

void open_or_throw(std::ofstream& out, const std::string& path) {
    out.open(path);
    if (!out) throw data_error("cannot open for writing: " + path);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

void write_curve_csv(const std::string& path, const CurvePoints& curve,
                     const std::string& header_comment) {
    std::ofstream out;
    open_or_throw(out, path);
    if (!header_comment.empty()) out << "# " << header_comment << "\n";
    out << "x,y\n";
    for (const auto& [x, y] : curve.points) out << fmt(x) << "," << fmt(y) << "\n";
}

void write_fit_csv(const std::string& path, const RegressionFit& fit,
                   const std::string& header_comment) {
    std::ofstream out;
    open_or_throw(out, path);
    if (!header_comment.empty()) out << "# " << header_comment << "\n";
    out << "name,value\n";
    out << "slope," << fmt(fit.slope) << "\n";
    out << "intercept," << fmt(fit.intercept) << "\n";
    out << "stderr_slope," << fmt(fit.stderr_slope) << "\n";
    out << "r2," << fmt(fit.r2) << "\n";
    out << "n," << fit.n << "\n";
}

}  // namespace convsim
