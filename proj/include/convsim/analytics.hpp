#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "convsim/conversation.hpp"
#include "convsim/distributions.hpp"

namespace convsim {

// A plot-ready curve: x strictly increasing, y finite.
struct CurvePoints {
    std::vector<std::pair<double, double>> points;

    bool empty() const { return points.empty(); }
    std::size_t size() const { return points.size(); }
};

struct RegressionFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    double r2 = 0.0;
    std::size_t n = 0;
};

// Empirical complementary CDF: at each distinct sample value v,
// y = (#samples > v) / n.  The largest value maps to y = 0.
CurvePoints ccdf(std::span<const double> samples);

// Geometric-bin density estimate with bins aligned to powers of ten;
// y = count / (n * bin_width), empty bins omitted, x at the geometric
// bin midpoint.  Integrates to one by construction.
CurvePoints log_binned_density(std::span<const double> samples, unsigned bins_per_decade = 10);

// Ordinary least squares on (log x, log y); requires positive
// coordinates and at least 3 points.
RegressionFit loglog_regression(const CurvePoints& curve);

// OLS on (x, log y): a straight line iff the curve is exponential.
RegressionFit semilog_regression(const CurvePoints& curve);

// One-sample Kolmogorov-Smirnov distance sup |F_emp - cdf|.
double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf);

// KS variant for integer-valued samples (sizes, degrees): compares the
// empirical CDF against the model CDF at each distinct value only, so
// ties are treated as single atoms.  Pass a continuity-corrected model
// (e.g. cdf(v + 0.5)) when the model treats the count as continuous.
double discrete_ks_distance(std::span<const double> samples,
                            const std::function<double(double)>& cdf_at);

enum class TailClass { heavy, light, exponential };
const char* to_string(TailClass t);

struct TailEvidence {
    WeibullLaw weibull;        // MLE fit of the sample
    FitResult weibull_fit;
    RegressionFit semilog;     // ln CCDF vs x; straight for exponential tails
    // log10 of empirical-CCDF / fitted-exponential-CCDF over the ten
    // largest positive CCDF points (median) and at the largest one.
    double tail_log10_ratio_median = 0.0;
    double tail_log10_ratio_last = 0.0;
    bool above_exponential_line = false;
};

struct TailVerdict {
    TailClass verdict;          // shape rule, heavy-overridden by the line rule
    TailClass shape_verdict;    // Weibull-shape rule alone
    TailEvidence evidence;
};

// Classifies the sample tail.  The Weibull-MLE shape decides
// heavy (< 1-eps) / light (> 1+eps) / exponential; independently, a
// tail sitting more than an order of magnitude above the fitted
// exponential complement is not exponentially bounded and forces
// `heavy` regardless of the fitted shape.
TailVerdict tail_classify(std::span<const double> samples, double eps = 0.05);

struct GrowthCurves {
    CurvePoints n_of_t;   // mean cumulative comments per exposed thread
    CurvePoints dn_dt;    // growth rate over geometric grid cells
};

// Growth curves for one thread (>= 2 comments) on a geometric grid of
// n_grid points spanning its event times.
GrowthCurves growth_curves(const Thread& thread, unsigned n_grid = 40);

// Pooled growth curves.  Counts in each grid cell are averaged over
// the threads still within their exposure window there, so the curve
// tracks per-thread growth rather than the exposure cutoff; cells with
// too few active threads or no events are dropped.
GrowthCurves growth_curves(std::span<const Thread> threads, unsigned n_grid = 40,
                           double min_active_fraction = 0.05);

// Sample quantile (linear interpolation between order statistics).
double quantile(std::span<const double> samples, double q);

// Restrict a curve to points with x in [lo, hi].
CurvePoints clip_curve(const CurvePoints& curve, double lo, double hi);

// CSV helpers ("x,y" / "name,value"); header_comment is emitted as a
// leading '#' line when nonempty.
void write_curve_csv(const std::string& path, const CurvePoints& curve,
                     const std::string& header_comment = "");
void write_fit_csv(const std::string& path, const RegressionFit& fit,
                   const std::string& header_comment = "");

}  // namespace convsim
