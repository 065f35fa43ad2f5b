#include "convsim/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "convsim/analytics.hpp"
#include "convsim/conversation.hpp"
#include "convsim/distributions.hpp"
#include "convsim/errors.hpp"
#include "convsim/ingestion.hpp"
#include "convsim/parallel.hpp"
#include "convsim/random.hpp"
#include "convsim/renewal.hpp"

namespace fs = std::filesystem;

namespace convsim {

namespace {

struct Scale {
    double tol = 1.0;        // tolerance multiplier
    std::size_t div = 1;     // sample-count divisor
    int verdict_min = 95;    // trichotomy replicates that must classify correctly
};

struct Suite {
    std::vector<CheckResult>& results;
    const ValidationConfig& cfg;
    Scale scale;

    std::chrono::steady_clock::time_point mark = std::chrono::steady_clock::now();

    void tick() { mark = std::chrono::steady_clock::now(); }
    double lap() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - mark).count();
    }

    void add(const std::string& id, bool pass, const std::string& detail) {
        results.push_back(CheckResult{id, detail, pass, lap()});
    }
};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

std::string in_band(const char* what, double value, double target, double tol) {
    std::ostringstream s;
    s << what << "=" << fmt(value) << " target " << fmt(target) << " +/- " << fmt(tol);
    return s.str();
}

std::string below(const char* what, double value, double limit) {
    std::ostringstream s;
    s << what << "=" << fmt(value) << " limit " << fmt(limit);
    return s.str();
}

std::vector<double> draw_tp(const TruncatedPareto& law, std::size_t n, std::uint64_t seed) {
    RandomStream rng(seed);
    std::vector<double> xs(n);
    for (auto& x : xs) x = law.sample(rng);
    return xs;
}

// Pooled event-time window used by the growth-slope fits.
std::pair<double, double> fit_window(std::span<const Thread> threads, double qlo, double qhi) {
    std::vector<double> times;
    for (const Thread& th : threads)
        for (std::size_t e = 1; e < th.events.size(); ++e)
            if (th.events[e].time > 0.0) times.push_back(th.events[e].time);
    return {quantile(times, qlo), quantile(times, qhi)};
}

std::vector<Thread> simulate_bundle(const TopicParams& params, std::size_t topics,
                                    std::uint64_t seed, unsigned workers) {
    std::vector<Thread> threads(topics);
    parallel_for(topics, workers, [&](std::size_t k) {
        RandomStream rng = RandomStream::derive(seed, k);
        threads[k] = simulate_thread_agent(params, rng);
    });
    return threads;
}

RegressionFit indegree_tail_fit(std::span<const Thread> threads, double delta0, double l_lo,
                                double l_hi) {
    const auto cc = indegree_ccdf(indegree_histogram(threads, true));
    double pool = 0.0;
    for (const Thread& th : threads) pool += static_cast<double>(th.events.size());
    CurvePoints pts;
    for (const auto& [l, p_geq] : cc)
        if (l >= l_lo && l <= l_hi && p_geq * pool >= 30.0)
            pts.points.emplace_back(l / delta0 + 1.0, p_geq);
    return loglog_regression(pts);
}

TopicParams growth_scenario() {
    TopicParams p;
    p.gamma = 0.05;
    p.c0 = 0.5;
    p.c = 1.2;
    p.user_count = 200;
    p.delta0 = 1.0;
    p.exposure = ExponentialLaw{0.003};
    p.waiting = TruncatedPareto{0.001, 1e6, 1.2};
    return p;
}

TopicParams structure_scenario(bool pareto_exposure) {
    // Attachment order is all that matters for the in-degree law, so the
    // scenario trades growth realism for thread size: near-unit accept
    // probability fills threads with ~half the user pool.
    TopicParams p;
    p.gamma = 1.0;
    p.c0 = 0.3;
    p.c = 1.2;
    p.user_count = 40000;
    p.delta0 = 1.0;
    if (pareto_exposure)
        p.exposure = ParetoLaw{1000.0, 1.5};
    else
        p.exposure = ExponentialLaw{1.0 / 3000.0};
    p.waiting = TruncatedPareto{0.01, 1e6, 1.2};
    return p;
}

// ---------------------------------------------------------------------------

void check_waiting_law(Suite& s) {
    const Scale& sc = s.scale;
    s.tick();

    const TruncatedPareto law{1.0, 100.0, 1.5};
    const std::size_t n = 100000 / sc.div;
    const auto xs = draw_tp(law, n, RandomStream::derive_seed(s.cfg.seed, 101));
    const double ks = ks_distance(xs, [&](double x) { return law.cdf(x); });
    const double ks_limit = 0.01 * sc.tol;
    bool pass = ks < ks_limit;
    std::string detail = below("sampler KS", ks, ks_limit);

    for (double c_true : {1.5670, 1.1262}) {
        const TruncatedPareto truth{1.0, 1e4, c_true};
        const auto ys =
            draw_tp(truth, 10000 / sc.div,
                    RandomStream::derive_seed(s.cfg.seed, 102 + static_cast<int>(10 * c_true)));
        const double b_hat = *std::max_element(ys.begin(), ys.end());
        const FitResult fit = tp_mle(ys, 1.0, b_hat);
        const double tol = 0.05 * sc.tol;
        pass = pass && std::abs(fit.param(0) - c_true) <= tol;
        detail += "; " + in_band("c_hat", fit.param(0), c_true, tol);
    }

    const double seconds = s.lap();
    pass = pass && seconds < 10.0;
    s.add("waiting-law/sampler+mle", pass, detail + "; " + below("runtime_s", seconds, 10.0));
}

void check_forward_recurrence(Suite& s) {
    const Scale& sc = s.scale;
    s.tick();

    const TruncatedPareto law{1.0, 100.0, 1.5};
    const ForwardRecurrence fr{law};
    const double mu = law.mean();
    const double t0 = (s.scale.div > 1 ? 1e3 : 1e4) * mu;
    const std::size_t n = 100000 / sc.div;

    std::vector<double> ys(n);
    const std::uint64_t base = RandomStream::derive_seed(s.cfg.seed, 201);
    parallel_for(n, s.cfg.workers, [&](std::size_t i) {
        RandomStream rng = RandomStream::derive(base, i);
        ys[i] = forward_recurrence_sample(law, t0, rng);
    });

    const double ks = ks_distance(ys, [&](double y) { return fr.cdf(y); });
    const double ks_limit = 0.02 * sc.tol;

    // density slope on the stretch of (a, b) where the upper-truncation
    // correction is negligible; the window sits on log-bin edges so no
    // partially covered bin distorts the fit
    std::vector<double> mid;
    const double win_lo = std::pow(10.0, 0.1), win_hi = std::pow(10.0, 0.9);
    for (double y : ys)
        if (y >= win_lo && y < win_hi) mid.push_back(y);
    const RegressionFit dens = loglog_regression(log_binned_density(mid, 10));
    const double slope_tol = 0.1 * sc.tol;

    const double seconds = s.lap();
    const bool pass = ks < ks_limit && std::abs(dens.slope + law.c) <= slope_tol && seconds < 60.0;
    s.add("renewal/forward-recurrence", pass,
          below("KS", ks, ks_limit) + "; " + in_band("density_slope", dens.slope, -law.c, slope_tol) +
              "; " + below("runtime_s", seconds, 60.0));
}

void check_growth_law(Suite& s) {
    const Scale& sc = s.scale;
    s.tick();

    const std::size_t topics = 500 / sc.div;
    const std::vector<Thread> threads =
        simulate_bundle(growth_scenario(), topics, RandomStream::derive_seed(s.cfg.seed, 301),
                        s.cfg.workers);
    const auto [lo, hi] = fit_window(threads, 0.25, 0.95);
    const GrowthCurves g = growth_curves(threads, 60, 0.05);
    const RegressionFit nfit = loglog_regression(clip_curve(g.n_of_t, lo, hi));
    const RegressionFit dfit = loglog_regression(clip_curve(g.dn_dt, lo, hi));

    const double n_tol = 0.05 * sc.tol, d_tol = 0.1 * sc.tol, diff_tol = 0.1 * sc.tol;
    const double seconds = s.lap();
    const bool pass = std::abs(nfit.slope - 0.3) <= n_tol && std::abs(dfit.slope + 0.7) <= d_tol &&
                      std::abs(nfit.slope - dfit.slope - 1.0) <= diff_tol && seconds < 120.0;
    s.add("growth/pooled-slopes", pass,
          in_band("slope_N", nfit.slope, 0.3, n_tol) + "; " +
              in_band("slope_dNdt", dfit.slope, -0.7, d_tol) + "; " +
              in_band("difference", nfit.slope - dfit.slope, 1.0, diff_tol) + "; " +
              below("runtime_s", seconds, 120.0));
}

void check_size_trichotomy(Suite& s) {
    const Scale& sc = s.scale;

    for (double c_prime : {0.5, 1.0, 2.0}) {
        s.tick();
        TopicParams p = growth_scenario();
        p.exposure = ExponentialLaw{0.001};
        p.c0 = p.c + c_prime - 1.0;  // growth exponent = c_prime

        const std::size_t n = 100000 / sc.div;
        RandomStream rng =
            RandomStream::derive(s.cfg.seed, 401 + static_cast<std::uint64_t>(10 * c_prime));
        std::vector<double> sizes;
        sizes.reserve(n);
        std::size_t zeros = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto v = static_cast<double>(simulate_size_analytic(p, rng));
            if (v > 0.0)
                sizes.push_back(v);
            else
                ++zeros;
        }

        const FitResult w = weibull_mle(sizes);
        const double shape_tol = 0.05 * sc.tol / c_prime;  // 5% of the 1/c' target
        const bool shape_ok = std::abs(w.param(0) - 1.0 / c_prime) <= shape_tol;

        const double ks = discrete_ks_distance(
            sizes, [&](double v) { return predicted_size_cdf(p, v + 0.5); });
        const double ks_limit = 0.015 * sc.tol;

        // seeded replicates through the tail classifier
        const TailClass expected = c_prime < 1.0   ? TailClass::light
                                   : c_prime > 1.0 ? TailClass::heavy
                                                   : TailClass::exponential;
        int correct = 0;
        const std::size_t rep_n = 20000 / sc.div;
        for (int rep = 0; rep < 100; ++rep) {
            RandomStream rrep = RandomStream::derive(
                s.cfg.seed, 500 + 100 * static_cast<std::uint64_t>(10 * c_prime) + rep);
            std::vector<double> rs;
            rs.reserve(rep_n);
            for (std::size_t i = 0; i < rep_n; ++i) {
                const auto v = static_cast<double>(simulate_size_analytic(p, rrep));
                if (v > 0.0) rs.push_back(v);
            }
            if (tail_classify(rs).verdict == expected) ++correct;
        }

        const bool pass = shape_ok && ks < ks_limit && correct >= sc.verdict_min;
        std::ostringstream id;
        id << "size-law/exponential-cprime-" << c_prime;
        s.add(id.str(), pass,
              in_band("weibull_shape", w.param(0), 1.0 / c_prime, shape_tol) + "; " +
                  below("KS", ks, ks_limit) + "; verdict " + to_string(expected) + " in " +
                  std::to_string(correct) + "/100 (need >= " + std::to_string(sc.verdict_min) +
                  "); zeros_dropped=" + std::to_string(zeros));
    }
}

void check_pareto_size_law(Suite& s) {
    const Scale& sc = s.scale;
    s.tick();

    TopicParams p = growth_scenario();
    p.c0 = p.c - 0.5;  // c' = 0.5
    p.exposure = ParetoLaw{1.0, 1.5};

    // cheap enough to run at full size on every scale; the above-line
    // verdict is a boolean and needs the full tail depth
    const std::size_t n = 100000;
    RandomStream rng = RandomStream::derive(s.cfg.seed, 601);
    std::vector<double> sizes(n);
    for (auto& v : sizes) v = static_cast<double>(simulate_size_analytic(p, rng));

    CurvePoints dens = log_binned_density(sizes, 10);
    dens = clip_curve(dens, 0.0, quantile(sizes, 0.999));
    const RegressionFit fit = loglog_regression(dens);
    const double slope_target = -(1.5 / 0.5 + 1.0);  // -(alpha/c' + 1)
    const double slope_tol = 0.2 * sc.tol;

    const double ks = discrete_ks_distance(
        sizes, [&](double v) { return predicted_size_cdf(p, v + 0.5); });
    const double ks_limit = 0.015 * sc.tol;

    const TailVerdict verdict = tail_classify(sizes);
    const bool pass = std::abs(fit.slope - slope_target) <= slope_tol && ks < ks_limit &&
                      verdict.evidence.above_exponential_line &&
                      verdict.verdict == TailClass::heavy;
    s.add("size-law/pareto-exposure", pass,
          in_band("density_slope", fit.slope, slope_target, slope_tol) + "; " +
              below("KS", ks, ks_limit) + "; tail above exp line: " +
              (verdict.evidence.above_exponential_line ? "yes" : "no") + " -> " +
              to_string(verdict.verdict));
}

void check_indegree_law(Suite& s) {
    const Scale& sc = s.scale;
    s.tick();

    const std::size_t topics = 400 / sc.div;
    const std::vector<Thread> exp_threads = simulate_bundle(
        structure_scenario(false), topics, RandomStream::derive_seed(s.cfg.seed, 701),
        s.cfg.workers);
    const std::vector<Thread> par_threads = simulate_bundle(
        structure_scenario(true), topics, RandomStream::derive_seed(s.cfg.seed, 702),
        s.cfg.workers);

    std::size_t pool = 0;
    for (const Thread& th : exp_threads) pool += th.comment_count();

    // sup-distance between the pooled in-degree CCDF and the closed-form
    // law.  The attachment process's exact zero-degree mass is
    // (1+delta0)/(1+2*delta0) while the closed form implies
    // 1 - 2^-(1+delta0); at delta0 = 1 those differ by 1/12, so the
    // distance bottoms out near 0.083 at any sample size.
    const auto cc = indegree_ccdf(indegree_histogram(exp_threads, true));
    double sup = 0.0;
    for (const auto& [l, p_geq] : cc) {
        const double predicted = 1.0 - predicted_indegree_cdf(1.0, l);
        sup = std::max(sup, std::abs(p_geq - predicted));
    }
    const double sup_limit = 0.02 * sc.tol;

    const RegressionFit fit_exp = indegree_tail_fit(exp_threads, 1.0, 20.0, 50.0);
    const RegressionFit fit_par = indegree_tail_fit(par_threads, 1.0, 20.0, 50.0);
    const double slope_tol = 0.1 * sc.tol;
    const bool exp_in_band = std::abs(fit_exp.slope + 2.0) <= slope_tol;
    const bool par_in_band = std::abs(fit_par.slope + 2.0) <= slope_tol;

    const double seconds = s.lap();
    s.add("indegree/ccdf-sup-distance", sup < sup_limit,
          below("sup", sup, sup_limit) +
              "; structural gap: process zero-degree mass 2/3 vs closed form 3/4");
    s.add("indegree/tail-exponent", exp_in_band && par_in_band && seconds < 120.0,
          in_band("slope(exp)", fit_exp.slope, -2.0, slope_tol) + "; " +
              in_band("slope(pareto)", fit_par.slope, -2.0, slope_tol) + "; pooled=" +
              std::to_string(pool) + "; " + below("runtime_s", seconds, 120.0));
    s.add("indegree/exposure-invariance",
          exp_in_band == par_in_band &&
              std::abs(fit_exp.slope - fit_par.slope) <= slope_tol,
          "verdicts match (" + std::string(exp_in_band ? "pareto-scaling" : "off-band") + "); " +
              in_band("slope gap", fit_exp.slope - fit_par.slope, 0.0, slope_tol));
}

void check_pipeline(Suite& s) {
    const Scale& sc = s.scale;
    const fs::path dir = fs::path(s.cfg.scratch_dir) / "pipeline";
    fs::create_directories(dir);

    // waiting-time exponent through simulate -> serialize -> parse -> fit
    s.tick();
    {
        const TruncatedPareto law{1.0, 1e4, 1.5};
        RandomStream rng = RandomStream::derive(s.cfg.seed, 801);
        const Corpus corpus = simulate_user_activity_corpus(law, 100, 300.0, rng);
        const std::string path = (dir / "users.jsonl").string();
        write_corpus_jsonl(path, corpus, "pipeline check");
        const Corpus parsed = parse_corpus(path, CorpusFormat::jsonl);
        const WaitingTimes wt = waiting_times(parsed);
        const double b = *std::max_element(wt.minutes.begin(), wt.minutes.end());
        const FitResult fit = tp_mle(wt.minutes, 1.0, b);
        const double tol = 0.05 * sc.tol;
        s.add("pipeline/waiting-c", std::abs(fit.param(0) - 1.5) <= tol,
              in_band("c_hat", fit.param(0), 1.5, tol) + " from " +
                  std::to_string(wt.minutes.size()) + " gaps");
    }

    // growth bundle: exposure family, growth exponent, exact before/after split
    s.tick();
    {
        const std::size_t topics = 500 / sc.div;
        const std::vector<Thread> threads = simulate_bundle(
            growth_scenario(), topics, RandomStream::derive_seed(s.cfg.seed, 301),
            s.cfg.workers);  // same bundle family as the growth check
        const Corpus corpus = corpus_from_threads(threads);
        const std::string path = (dir / "threads.jsonl").string();
        write_corpus_jsonl(path, corpus, "pipeline check");
        ParseReport rep;
        const Corpus parsed = parse_corpus(path, CorpusFormat::jsonl, &rep);

        std::vector<Thread> rebuilt;
        rebuilt.reserve(parsed.topics.size());
        for (const auto& [id, topic] : parsed.topics) rebuilt.push_back(topic_to_thread(topic));

        const auto [lo, hi] = fit_window(rebuilt, 0.25, 0.95);
        const GrowthCurves g = growth_curves(rebuilt, 60, 0.05);
        const RegressionFit nfit = loglog_regression(clip_curve(g.n_of_t, lo, hi));
        const double c_tol = 0.05 * sc.tol;

        const ExposureDurations ed = exposure_durations(parsed);
        const ExposureFit family = fit_exposure(ed.minutes);

        bool ratios_exact = true;
        std::size_t rated = 0;
        for (const auto& [id, topic] : parsed.topics) {
            if (topic.comments.empty()) continue;
            const double ratio = before_after_ratio(topic, detect_inflection(topic));
            ++rated;
            if (ratio != 1.0) ratios_exact = false;
        }

        const bool pass = rep.malformed == 0 && std::abs(nfit.slope - 0.3) <= c_tol &&
                          family.family == ExposureFamily::exponential && ratios_exact &&
                          rated > 0;
        s.add("pipeline/growth-bundle", pass,
              in_band("c_prime", nfit.slope, 0.3, c_tol) + "; family " +
                  to_string(family.family) + "; before/after == 1.0 on " +
                  std::to_string(rated) + " topics");
    }

    // pareto exposure family recovery through serialization
    s.tick();
    {
        TopicParams p = growth_scenario();
        p.exposure = ParetoLaw{200.0, 1.5};
        const std::vector<Thread> threads = simulate_bundle(
            p, std::max<std::size_t>(60, 500 / sc.div),
            RandomStream::derive_seed(s.cfg.seed, 803), s.cfg.workers);
        const Corpus corpus = corpus_from_threads(threads);
        const std::string path = (dir / "pareto_threads.jsonl").string();
        write_corpus_jsonl(path, corpus, "pipeline check");
        const Corpus parsed = parse_corpus(path, CorpusFormat::jsonl);
        const ExposureFit family = fit_exposure(exposure_durations(parsed).minutes);
        s.add("pipeline/exposure-family", family.family == ExposureFamily::pareto,
              std::string("family ") + to_string(family.family) + " (loglik gap " +
                  fmt(family.loglik_gap) + ")");
    }

    // in-degree tail exponent through serialization
    s.tick();
    {
        TopicParams p = structure_scenario(false);
        p.user_count = 20000;
        const std::size_t topics = std::max<std::size_t>(15, 150 / sc.div);
        const std::vector<Thread> threads = simulate_bundle(
            p, topics, RandomStream::derive_seed(s.cfg.seed, 804), s.cfg.workers);
        const Corpus corpus = corpus_from_threads(threads);
        const std::string path = (dir / "structure.jsonl").string();
        write_corpus_jsonl(path, corpus, "pipeline check");
        const Corpus parsed = parse_corpus(path, CorpusFormat::jsonl);
        std::vector<Thread> rebuilt;
        rebuilt.reserve(parsed.topics.size());
        for (const auto& [id, topic] : parsed.topics) rebuilt.push_back(topic_to_thread(topic));
        const RegressionFit fit = indegree_tail_fit(rebuilt, 1.0, 15.0, 45.0);
        const double tol = 0.1 * sc.tol;
        s.add("pipeline/indegree-exponent", std::abs(fit.slope + 2.0) <= tol,
              in_band("slope", fit.slope, -2.0, tol));
    }
}

// Byte-identical outputs across reruns and worker counts.
void check_determinism(Suite& s) {
    s.tick();
    if (s.cfg.cli_path.empty()) {
        s.add("determinism/cli", false, "no CLI binary path configured");
        return;
    }
    const fs::path dir = fs::path(s.cfg.scratch_dir) / "determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);

    const std::string topics = "40";  // enough topics for the exposure-fit rerun
    const auto run = [&](const std::string& out, const std::string& workers) {
        std::ostringstream cmd;
        cmd << "\"" << s.cfg.cli_path << "\" simulate --out \"" << out << "\""
            << " --seed 11 --topics " << topics
            << " --gamma 0.05 --c0 0.5 --c 1.2 --M 200 --delta0 1"
            << " --exposure exp:0.005 --wait-a 0.01 --wait-b 1e6 --workers " << workers
            << " > /dev/null";
        return std::system(cmd.str().c_str());
    };

    const auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };

    const int r1 = run((dir / "a").string(), "1");
    const int r2 = run((dir / "b").string(), "1");
    const int r3 = run((dir / "c").string(), "4");
    bool pass = r1 == 0 && r2 == 0 && r3 == 0;
    std::string detail = "exit codes " + std::to_string(r1) + "/" + std::to_string(r2) + "/" +
                         std::to_string(r3);
    if (pass) {
        for (const char* name : {"events.jsonl", "summary.csv"}) {
            const std::string a = slurp(dir / "a" / name);
            const std::string b = slurp(dir / "b" / name);
            const std::string c = slurp(dir / "c" / name);
            const bool rerun_ok = !a.empty() && a == b;
            const bool workers_ok = a == c;
            pass = pass && rerun_ok && workers_ok;
            detail += std::string("; ") + name + (rerun_ok ? " rerun=identical" : " rerun=DIFFERS") +
                      (workers_ok ? ", workers=identical" : ", workers=DIFFERS");
        }
    }

    // an estimator command rerun on the same input must also be stable
    if (pass) {
        std::ostringstream fit1, fit2;
        fit1 << "\"" << s.cfg.cli_path << "\" fit --input \"" << (dir / "a" / "events.jsonl").string()
             << "\" --target exposure --out \"" << (dir / "fit1.csv") << "\" > /dev/null";
        fit2 << "\"" << s.cfg.cli_path << "\" fit --input \"" << (dir / "a" / "events.jsonl").string()
             << "\" --target exposure --out \"" << (dir / "fit2.csv") << "\" > /dev/null";
        pass = std::system(fit1.str().c_str()) == 0 && std::system(fit2.str().c_str()) == 0 &&
               slurp(dir / "fit1.csv") == slurp(dir / "fit2.csv") &&
               !slurp(dir / "fit1.csv").empty();
        detail += pass ? "; fit rerun=identical" : "; fit rerun=DIFFERS";
    }
    s.add("determinism/cli", pass, detail);
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidationConfig& config) {
    std::vector<CheckResult> results;
    Suite suite{results, config, Scale{}};
    if (config.tiny) suite.scale = Scale{2.0, 10, 90};
    fs::create_directories(config.scratch_dir);

    check_waiting_law(suite);
    check_forward_recurrence(suite);
    check_growth_law(suite);
    check_size_trichotomy(suite);
    check_pareto_size_law(suite);
    check_indegree_law(suite);
    check_pipeline(suite);
    check_determinism(suite);
    return results;
}

}  // namespace convsim
