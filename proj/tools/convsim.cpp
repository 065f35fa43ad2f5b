// convsim: simulate conversation threads, fit model parameters from
// event corpora, and analyze growth/size/structure statistics.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "convsim/analytics.hpp"
#include "convsim/conversation.hpp"
#include "convsim/distributions.hpp"
#include "convsim/errors.hpp"
#include "convsim/ingestion.hpp"
#include "convsim/parallel.hpp"
#include "convsim/random.hpp"
#include "convsim/validation.hpp"

namespace fs = std::filesystem;
using namespace convsim;

namespace {

// Flat JSON key/value config files.  The keys are injected as long
// flags right after the subcommand, ahead of the user's own flags;
// options take the last occurrence, so explicit flags win.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    if (args.size() < 2) return args;
    std::string config_path;
    for (std::size_t i = 2; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            config_path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            config_path = args[i].substr(9);
    }
    if (config_path.empty()) return args;

    std::ifstream in(config_path);
    if (!in) throw convsim::parameter_error("cannot open config file " + config_path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw convsim::parameter_error("config file " + config_path + ": " + e.what());
    }
    if (!j.is_object())
        throw convsim::parameter_error("config file must be a flat JSON object");

    std::vector<std::string> expanded{args[0], args[1]};
    for (auto& [key, value] : j.items()) {
        expanded.push_back("--" + key);
        expanded.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
    expanded.insert(expanded.end(), args.begin() + 2, args.end());
    return expanded;
}

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

ExposureLaw parse_exposure_spec(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string piece;
    while (std::getline(ss, piece, ':')) parts.push_back(piece);
    try {
        if (parts.size() == 2 && parts[0] == "exp") return ExponentialLaw{std::stod(parts[1])};
        if (parts.size() == 3 && parts[0] == "pareto")
            return ParetoLaw{std::stod(parts[1]), std::stod(parts[2])};
    } catch (const std::exception&) {
    }
    throw parameter_error("exposure spec must be exp:<lambda> or pareto:<t_min>:<alpha>, got '" +
                          spec + "'");
}

CorpusFormat resolve_format(const std::string& flag, const std::string& path) {
    if (flag == "jsonl") return CorpusFormat::jsonl;
    if (flag == "csv") return CorpusFormat::csv;
    return path.ends_with(".csv") ? CorpusFormat::csv : CorpusFormat::jsonl;
}

std::uint64_t default_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOpts {
    std::string out_dir;
    std::string mode = "threads";
    std::string exposure_spec = "exp:0.003";
    std::string user_model = "discovery";
    std::string format = "jsonl";
    std::uint64_t seed = 0;
    unsigned topics = 100;
    unsigned workers = 0;
    unsigned user_count = 200;
    unsigned users = 100;
    double horizon = 300.0;
    double gamma = 0.05, c0 = 0.5, c = 1.2, delta0 = 1.0;
    double wait_a = 0.001, wait_b = 1e6;
};

TopicParams params_from(const SimulateOpts& o) {
    TopicParams p;
    p.gamma = o.gamma;
    p.c0 = o.c0;
    p.c = o.c;
    p.user_count = o.user_count;
    p.delta0 = o.delta0;
    p.exposure = parse_exposure_spec(o.exposure_spec);
    p.waiting = TruncatedPareto{o.wait_a, o.wait_b, o.c};
    if (o.user_model == "discovery")
        p.user_model = UserModel::discovery;
    else if (o.user_model == "fresh")
        p.user_model = UserModel::fresh_renewal;
    else
        throw parameter_error("user model must be discovery or fresh, got '" + o.user_model + "'");
    p.validate();
    return p;
}

// Canonical invocation line for output headers: semantic parameters and
// the seed only, so reruns and different worker counts stay
// byte-identical.
std::string simulate_header(const SimulateOpts& o) {
    std::ostringstream h;
    h << "convsim simulate --mode " << o.mode << " --seed " << o.seed;
    if (o.mode == "users") {
        h << " --users " << o.users << " --horizon " << fmt_num(o.horizon) << " --c "
          << fmt_num(o.c) << " --wait-a " << fmt_num(o.wait_a) << " --wait-b "
          << fmt_num(o.wait_b);
    } else {
        h << " --topics " << o.topics << " --gamma " << fmt_num(o.gamma) << " --c0 "
          << fmt_num(o.c0) << " --c " << fmt_num(o.c) << " --M " << o.user_count << " --delta0 "
          << fmt_num(o.delta0) << " --exposure " << o.exposure_spec << " --wait-a "
          << fmt_num(o.wait_a) << " --wait-b " << fmt_num(o.wait_b) << " --user-model "
          << o.user_model;
    }
    return h.str();
}

int run_simulate(const SimulateOpts& o) {
    if (o.topics < 1) throw parameter_error("need --topics >= 1");
    fs::create_directories(o.out_dir);
    const std::string header = simulate_header(o);
    std::printf("seed: %llu\n", static_cast<unsigned long long>(o.seed));

    const fs::path events_path =
        fs::path(o.out_dir) / (o.format == "csv" ? "events.csv" : "events.jsonl");
    const fs::path summary_path = fs::path(o.out_dir) / "summary.csv";

    std::ofstream summary(summary_path);
    if (!summary) throw data_error("cannot open " + summary_path.string());
    summary << "# " << header << "\n";
    summary << "topic_id,exposure_minutes,n_comments,max_indegree\n";

    if (o.mode == "users") {
        TruncatedPareto waiting{o.wait_a, o.wait_b, o.c};
        RandomStream rng(o.seed);
        const Corpus corpus = simulate_user_activity_corpus(waiting, o.users, o.horizon, rng);
        if (o.format == "csv")
            write_corpus_csv(events_path.string(), corpus, header);
        else
            write_corpus_jsonl(events_path.string(), corpus, header);
        summary << "site," << fmt_num(o.horizon) << "," << corpus.comment_count() << ",\n";
        std::printf("wrote %s and %s\n", events_path.string().c_str(),
                    summary_path.string().c_str());
        return 0;
    }

    const TopicParams params = params_from(o);

    if (o.mode == "analytic") {
        for (unsigned k = 0; k < o.topics; ++k) {
            RandomStream rng = RandomStream::derive(o.seed, k);
            const double t = exposure_sample(params.exposure, rng);
            const auto size = static_cast<std::uint64_t>(std::llround(mean_field_size(params, t)));
            summary << "t" << k << "," << fmt_num(t) << "," << size << ",\n";
        }
        std::printf("wrote %s\n", summary_path.string().c_str());
        return 0;
    }
    if (o.mode != "threads") throw parameter_error("mode must be threads, analytic or users");

    std::vector<Thread> threads(o.topics);
    parallel_for(o.topics, o.workers, [&](std::size_t k) {
        RandomStream rng = RandomStream::derive(o.seed, k);
        threads[k] = simulate_thread_agent(params, rng);
    });

    const Corpus corpus = corpus_from_threads(threads);
    if (o.format == "csv")
        write_corpus_csv(events_path.string(), corpus, header);
    else
        write_corpus_jsonl(events_path.string(), corpus, header);

    std::size_t k = 0;
    for (const auto& [topic_id, topic] : corpus.topics) {
        const Thread& th = threads[k++];
        std::uint32_t max_indeg = 0;
        std::vector<std::uint32_t> indeg(th.events.size(), 0);
        for (std::size_t i = 1; i < th.events.size(); ++i) indeg[th.events[i].parent]++;
        for (auto d : indeg) max_indeg = std::max(max_indeg, d);
        summary << topic_id << "," << fmt_num(th.exposure_duration) << "," << th.comment_count()
                << "," << max_indeg << "\n";
    }
    std::printf("wrote %s and %s (%zu topics, %zu comments)\n", events_path.string().c_str(),
                summary_path.string().c_str(), corpus.topics.size(), corpus.comment_count());
    return 0;
}

// ---------------------------------------------------------------------------
// fit

struct FitOpts {
    std::string input;
    std::string target;
    std::string format = "auto";
    std::string out = "-";
    double waiting_a = 1.0;
};

std::vector<double> sizes_from_summary_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open " + path);
    std::vector<double> sizes;
    std::string line;
    int size_col = -1;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (size_col < 0) {
            for (std::size_t i = 0; i < fields.size(); ++i)
                if (fields[i] == "n_comments") size_col = static_cast<int>(i);
            if (size_col < 0) throw data_error("no n_comments column in " + path);
            continue;
        }
        if (static_cast<std::size_t>(size_col) < fields.size() && !fields[size_col].empty())
            sizes.push_back(std::stod(fields[size_col]));
    }
    return sizes;
}

bool looks_like_summary(const std::string& path) {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        return line.find("n_comments") != std::string::npos;
    }
    return false;
}

void emit_fit_rows(std::ostream& out, const std::string& target, const std::string& family,
                   const FitResult& fit) {
    for (std::size_t i = 0; i < fit.params.size(); ++i) {
        out << target << "," << family << "," << fit.param_names[i] << ","
            << fmt_num(fit.params[i]) << "," << fmt_num(fit.stderrs[i]) << ","
            << fmt_num(fit.loglik) << "," << fit.n << "\n";
    }
}

int run_fit(const FitOpts& o) {
    std::ostringstream body;
    body << "target,family,param,estimate,stderr,loglik,n\n";

    if (o.target == "size" && o.input.ends_with(".csv") && looks_like_summary(o.input)) {
        std::vector<double> sizes = sizes_from_summary_csv(o.input);
        std::erase_if(sizes, [](double s) { return s <= 0.0; });
        emit_fit_rows(body, "size", "weibull", weibull_mle(sizes));
    } else {
        const Corpus corpus = parse_corpus(o.input, resolve_format(o.format, o.input));
        if (o.target == "waiting") {
            WaitingTimes wt = waiting_times(corpus);
            const std::size_t before = wt.minutes.size();
            std::erase_if(wt.minutes, [&](double m) { return m < o.waiting_a; });
            if (wt.minutes.empty()) throw data_error("no waiting times at or above a");
            const double b = *std::max_element(wt.minutes.begin(), wt.minutes.end());
            emit_fit_rows(body, "waiting", "truncated_pareto",
                          tp_mle(wt.minutes, o.waiting_a, b));
            body << "waiting,truncated_pareto,a," << fmt_num(o.waiting_a) << ",,,\n";
            body << "waiting,truncated_pareto,b," << fmt_num(b) << ",,,\n";
            body << "waiting,truncated_pareto,gaps_below_a," << (before - wt.minutes.size())
                 << ",,,\n";
        } else if (o.target == "exposure") {
            const ExposureDurations ed = exposure_durations(corpus);
            const ExposureFit sel = fit_exposure(ed.minutes);
            emit_fit_rows(body, "exposure", to_string(sel.family), sel.fit);
            body << "exposure," << to_string(sel.family) << ",loglik_gap,"
                 << fmt_num(sel.loglik_gap) << ",,,\n";
        } else if (o.target == "size") {
            std::vector<double> sizes;
            for (const auto& [id, topic] : corpus.topics)
                if (!topic.comments.empty())
                    sizes.push_back(static_cast<double>(topic.comments.size()));
            emit_fit_rows(body, "size", "weibull", weibull_mle(sizes));
        } else {
            throw parameter_error("fit target must be waiting, exposure or size");
        }
    }

    if (o.out == "-") {
        std::cout << body.str();
    } else {
        std::ofstream out(o.out);
        if (!out) throw data_error("cannot open " + o.out);
        out << "# convsim fit --target " << o.target << " --input " << o.input << "\n"
            << body.str();
        std::printf("wrote %s\n", o.out.c_str());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeOpts {
    std::string input;
    std::string out_dir;
    std::string format = "auto";
    unsigned bins_per_decade = 10;
    unsigned grid = 60;
    double fit_qlo = 0.25, fit_qhi = 0.95;
    double min_active = 0.05;
    double delta0 = 1.0;
    double inflection_q = 0.95;
};

int run_analyze(const AnalyzeOpts& o) {
    const Corpus corpus = parse_corpus(o.input, resolve_format(o.format, o.input));
    if (corpus.topics.empty()) throw data_error("analyze: no topics in " + o.input);
    fs::create_directories(o.out_dir);
    std::ostringstream hdr;
    hdr << "convsim analyze --input " << o.input << " --bins-per-decade " << o.bins_per_decade
        << " --grid " << o.grid << " --fit-qlo " << fmt_num(o.fit_qlo) << " --fit-qhi "
        << fmt_num(o.fit_qhi) << " --min-active " << fmt_num(o.min_active) << " --delta0 "
        << fmt_num(o.delta0) << " --inflection-q " << fmt_num(o.inflection_q);
    const std::string header = hdr.str();
    const auto out_path = [&](const char* name) { return (fs::path(o.out_dir) / name).string(); };

    std::vector<std::pair<std::string, std::string>> report;
    const auto note = [&](const std::string& k, const std::string& v) {
        report.emplace_back(k, v);
    };
    const auto note_num = [&](const std::string& k, double v) { note(k, fmt_num(v)); };

    note_num("topics", static_cast<double>(corpus.topics.size()));
    note_num("comments", static_cast<double>(corpus.comment_count()));

    std::vector<Thread> threads;
    std::vector<double> sizes;
    threads.reserve(corpus.topics.size());
    for (const auto& [id, topic] : corpus.topics) {
        threads.push_back(topic_to_thread(topic));
        sizes.push_back(static_cast<double>(topic.comments.size()));
    }

    // growth curves, pooled over threads
    std::vector<double> times;
    for (const Thread& th : threads)
        for (std::size_t e = 1; e < th.events.size(); ++e)
            if (th.events[e].time > 0.0) times.push_back(th.events[e].time);
    if (times.size() >= 50) {
        const GrowthCurves g = growth_curves(threads, o.grid, o.min_active);
        write_curve_csv(out_path("n_of_t.csv"), g.n_of_t, header);
        write_curve_csv(out_path("dn_dt.csv"), g.dn_dt, header);
        const double lo = quantile(times, o.fit_qlo), hi = quantile(times, o.fit_qhi);
        const CurvePoints n_win = clip_curve(g.n_of_t, lo, hi);
        const CurvePoints d_win = clip_curve(g.dn_dt, lo, hi);
        if (n_win.size() >= 3 && d_win.size() >= 3) {
            const RegressionFit nfit = loglog_regression(n_win);
            const RegressionFit dfit = loglog_regression(d_win);
            write_fit_csv(out_path("n_of_t_fit.csv"), nfit, header);
            write_fit_csv(out_path("dn_dt_fit.csv"), dfit, header);
            note_num("fit_window_lo_minutes", lo);
            note_num("fit_window_hi_minutes", hi);
            note_num("slope_n", nfit.slope);
            note_num("slope_n_stderr", nfit.stderr_slope);
            note_num("slope_dndt", dfit.slope);
            note_num("slope_dndt_stderr", dfit.stderr_slope);
            note_num("slope_diff", nfit.slope - dfit.slope);
        }
    }

    // conversation sizes
    std::vector<double> positive_sizes = sizes;
    std::erase_if(positive_sizes, [](double s) { return s <= 0.0; });
    if (!positive_sizes.empty()) {
        write_curve_csv(out_path("size_ccdf.csv"), ccdf(positive_sizes), header);
        write_curve_csv(out_path("size_density.csv"),
                        log_binned_density(positive_sizes, o.bins_per_decade), header);
    }
    if (positive_sizes.size() >= 100) {
        try {
            const TailVerdict verdict = tail_classify(positive_sizes);
            note("size_tail_verdict", to_string(verdict.verdict));
            note("size_tail_shape_rule", to_string(verdict.shape_verdict));
            note("size_tail_above_exp_line",
                 verdict.evidence.above_exponential_line ? "yes" : "no");
            note_num("size_weibull_shape", verdict.evidence.weibull.shape);
            note_num("size_weibull_scale", verdict.evidence.weibull.scale);
            const WeibullLaw w = verdict.evidence.weibull;
            note_num("ks_size_vs_weibull_fit",
                     discrete_ks_distance(positive_sizes,
                                          [&](double v) { return w.cdf(v + 0.5); }));
        } catch (const std::exception& e) {
            note("size_tail_error", e.what());
        }
    }

    // in-degree structure
    const auto hist = indegree_histogram(threads, true);
    if (!hist.empty()) {
        const auto cc = indegree_ccdf(hist);
        CurvePoints cc_curve;
        for (const auto& [l, p_geq] : cc) cc_curve.points.emplace_back(l, p_geq);
        write_curve_csv(out_path("indegree_ccdf.csv"), cc_curve, header);

        double pool = 0.0;
        for (const auto& [k, cnt] : hist) pool += static_cast<double>(cnt);
        CurvePoints tail_pts;
        for (const auto& [l, p_geq] : cc)
            if (l >= 5.0 * o.delta0 && p_geq * pool >= 30.0)
                tail_pts.points.emplace_back(l / o.delta0 + 1.0, p_geq);
        if (tail_pts.size() >= 3) {
            const RegressionFit ifit = loglog_regression(tail_pts);
            write_fit_csv(out_path("indegree_fit.csv"), ifit, header);
            note_num("indegree_ccdf_slope", ifit.slope);
            note_num("indegree_ccdf_slope_stderr", ifit.stderr_slope);
        }
    }

    // waiting times and exposure durations; these fits are advisory in
    // a report, so estimator failures turn into rows instead of aborts
    WaitingTimes wt = waiting_times(corpus);
    note_num("waiting_gaps", static_cast<double>(wt.minutes.size()));
    std::vector<double> gaps = wt.minutes;
    std::erase_if(gaps, [](double m) { return m < 1.0; });
    if (gaps.size() >= 100) {
        write_curve_csv(out_path("waiting_density.csv"),
                        log_binned_density(gaps, o.bins_per_decade), header);
        try {
            const double b = *std::max_element(gaps.begin(), gaps.end());
            const FitResult fit = tp_mle(gaps, 1.0, b);
            note_num("waiting_c_mle", fit.param(0));
            note_num("waiting_c_stderr", fit.stderrs[0]);
        } catch (const std::exception& e) {
            note("waiting_c_mle_error", e.what());
        }
    }
    const ExposureDurations ed = exposure_durations(corpus);
    if (ed.minutes.size() >= 30) {
        try {
            const ExposureFit sel = fit_exposure(ed.minutes);
            note("exposure_family", to_string(sel.family));
            note_num("exposure_loglik_gap", sel.loglik_gap);
            for (std::size_t i = 0; i < sel.fit.params.size(); ++i)
                note_num("exposure_" + sel.fit.param_names[i], sel.fit.params[i]);
        } catch (const std::exception& e) {
            note("exposure_fit_error", e.what());
        }
    }

    // before/after-inflection split
    {
        double sum = 0.0;
        std::size_t counted = 0;
        bool all_one = true;
        for (const auto& [id, topic] : corpus.topics) {
            if (topic.comments.empty()) continue;
            if (!topic.removed_at && topic.comments.size() < 5) continue;
            const double inflection = detect_inflection(topic, o.inflection_q, true);
            const double ratio = before_after_ratio(topic, inflection);
            sum += ratio;
            ++counted;
            if (ratio != 1.0) all_one = false;
        }
        if (counted > 0) {
            note_num("before_after_mean_ratio", sum / static_cast<double>(counted));
            note("before_after_all_one", all_one ? "yes" : "no");
        }
    }

    std::ofstream rep(out_path("report.csv"));
    if (!rep) throw data_error("cannot open report.csv");
    rep << "# " << header << "\n";
    rep << "name,value\n";
    for (const auto& [k, v] : report) rep << k << "," << v << "\n";

    for (const auto& [k, v] : report) std::printf("%-28s %s\n", k.c_str(), v.c_str());
    std::printf("wrote %s\n", out_path("report.csv").c_str());
    return 0;
}

// ---------------------------------------------------------------------------
// validate

struct ValidateOpts {
    std::string scale = "full";
    std::string out_dir;
    std::uint64_t seed = 7;
    unsigned workers = 0;
};

int run_validate(const ValidateOpts& o, const std::string& self_path) {
    ValidationConfig cfg;
    cfg.seed = o.seed;
    cfg.tiny = o.scale == "tiny";
    if (!cfg.tiny && o.scale != "full")
        throw parameter_error("scale must be full or tiny, got '" + o.scale + "'");
    cfg.workers = o.workers;
    cfg.cli_path = self_path;
    cfg.scratch_dir =
        o.out_dir.empty() ? (fs::temp_directory_path() / "convsim_validate").string() : o.out_dir;

    std::printf("seed: %llu\nscale: %s\n", static_cast<unsigned long long>(cfg.seed),
                cfg.tiny ? "tiny" : "full");
    const std::vector<CheckResult> results = run_validation(cfg);
    std::size_t failed = 0;
    for (const CheckResult& r : results) {
        std::printf("[%s] %-36s %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", r.id.c_str(),
                    r.detail.c_str(), r.seconds);
        if (!r.pass) ++failed;
    }
    std::printf("%zu/%zu checks passed\n", results.size() - failed, results.size());
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"conversation-thread growth simulator and fitting toolkit"};
    app.require_subcommand(1);

    SimulateOpts sim;
    bool seed_given = false;
    CLI::App* c_sim = app.add_subcommand("simulate", "generate synthetic event corpora");
    c_sim->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    std::string config_path_sink;
    c_sim->add_option("--config", config_path_sink, "flat JSON config; flags override");
    c_sim->add_option("--out", sim.out_dir, "output directory")->required();
    c_sim->add_option("--mode", sim.mode, "threads | analytic | users");
    c_sim->add_option("--seed", sim.seed, "rng seed (printed; random when omitted)")
        ->each([&](const std::string&) { seed_given = true; });
    c_sim->add_option("--topics", sim.topics, "number of topics");
    c_sim->add_option("--gamma", sim.gamma, "interestingness base");
    c_sim->add_option("--c0", sim.c0, "social-feedback exponent");
    c_sim->add_option("--c", sim.c, "waiting-time tail exponent");
    c_sim->add_option("--M", sim.user_count, "users per topic");
    c_sim->add_option("--delta0", sim.delta0, "attachment offset");
    c_sim->add_option("--exposure", sim.exposure_spec, "exp:<lambda> | pareto:<t_min>:<alpha>");
    c_sim->add_option("--wait-a", sim.wait_a, "waiting-law lower bound (minutes)");
    c_sim->add_option("--wait-b", sim.wait_b, "waiting-law upper bound (minutes)");
    c_sim->add_option("--user-model", sim.user_model, "discovery | fresh");
    c_sim->add_option("--users", sim.users, "users (users mode)");
    c_sim->add_option("--horizon", sim.horizon, "horizon in minutes (users mode)");
    c_sim->add_option("--workers", sim.workers, "worker threads (0 = auto)");
    c_sim->add_option("--format", sim.format, "jsonl | csv")
        ->check(CLI::IsMember({"jsonl", "csv"}));

    FitOpts fit;
    CLI::App* c_fit = app.add_subcommand("fit", "maximum-likelihood fits from event corpora");
    c_fit->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    c_fit->add_option("--config", config_path_sink, "flat JSON config; flags override");
    c_fit->add_option("--input", fit.input, "events file (jsonl/csv) or summary csv")->required();
    c_fit->add_option("--target", fit.target, "waiting | exposure | size")->required();
    c_fit->add_option("--format", fit.format, "jsonl | csv | auto");
    c_fit->add_option("--out", fit.out, "output csv path, '-' for stdout");
    c_fit->add_option("--a", fit.waiting_a, "waiting-law lower bound in minutes");

    AnalyzeOpts an;
    CLI::App* c_an = app.add_subcommand("analyze", "empirical curves, fits and verdicts");
    c_an->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    c_an->add_option("--config", config_path_sink, "flat JSON config; flags override");
    c_an->add_option("--input", an.input, "events file")->required();
    c_an->add_option("--out", an.out_dir, "output directory")->required();
    c_an->add_option("--format", an.format, "jsonl | csv | auto");
    c_an->add_option("--bins-per-decade", an.bins_per_decade, "log-binning resolution");
    c_an->add_option("--grid", an.grid, "growth-curve grid points");
    c_an->add_option("--fit-qlo", an.fit_qlo, "regression window: lower event-time quantile");
    c_an->add_option("--fit-qhi", an.fit_qhi, "regression window: upper event-time quantile");
    c_an->add_option("--min-active", an.min_active, "min active-thread fraction per grid cell");
    c_an->add_option("--delta0", an.delta0, "attachment offset for the in-degree fit");
    c_an->add_option("--inflection-q", an.inflection_q, "quantile for the inflection rule");

    ValidateOpts val;
    CLI::App* c_val = app.add_subcommand("validate", "run the model-consistency check suite");
    c_val->add_option("--scale", val.scale, "full | tiny");
    c_val->add_option("--seed", val.seed, "rng seed");
    c_val->add_option("--workers", val.workers, "worker threads (0 = auto)");
    c_val->add_option("--out", val.out_dir, "scratch directory");

    std::vector<std::string> args;
    try {
        args = expand_config(argc, argv);
    } catch (const parameter_error& e) {
        std::fprintf(stderr, "parameter error: %s\n", e.what());
        return 2;
    }
    std::vector<const char*> argv2;
    argv2.reserve(args.size());
    for (const std::string& a : args) argv2.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv2.size()), argv2.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_sim->parsed()) {
            if (!seed_given) sim.seed = default_seed();
            return run_simulate(sim);
        }
        if (c_fit->parsed()) return run_fit(fit);
        if (c_an->parsed()) return run_analyze(an);
        if (c_val->parsed()) {
            std::error_code ec;
            const fs::path self = fs::canonical(argv[0], ec);
            return run_validate(val, ec ? std::string(argv[0]) : self.string());
        }
    } catch (const parameter_error& e) {
        std::fprintf(stderr, "parameter error: %s\n", e.what());
        return 2;
    } catch (const data_error& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 3;
    } catch (const numeric_error& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
