#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "convsim/analytics.hpp"
#include "convsim/conversation.hpp"
#include "convsim/errors.hpp"
#include "oracles.hpp"

using namespace convsim;

namespace {

TopicParams growth_params(double lambda = 0.003) {
    TopicParams p;
    p.gamma = 0.05;
    p.c0 = 0.5;
    p.c = 1.2;
    p.user_count = 200;
    p.delta0 = 1.0;
    p.exposure = ExponentialLaw{lambda};
    p.waiting = TruncatedPareto{0.001, 1e6, 1.2};
    return p;
}

std::vector<Thread> simulate_many(const TopicParams& p, int n, std::uint64_t seed) {
    std::vector<Thread> threads(n);
    for (int k = 0; k < n; ++k) {
        RandomStream rng = RandomStream::derive(seed, k);
        threads[k] = simulate_thread_agent(p, rng);
    }
    return threads;
}

std::vector<double> pooled_times(std::span<const Thread> threads) {
    std::vector<double> times;
    for (const Thread& th : threads)
        for (std::size_t e = 1; e < th.events.size(); ++e) times.push_back(th.events[e].time);
    return times;
}

}  // namespace

TEST_CASE("topic params validation") {
    TopicParams p = growth_params();
    CHECK(p.growth_exponent() == doctest::Approx(0.3));
    CHECK(p.gamma_prime() == doctest::Approx(10.0));
    CHECK_NOTHROW(p.validate());

    p.c = 2.5;
    p.c0 = 0.0;  // c' = -1.5: non-growing
    CHECK_THROWS_AS(p.validate(), parameter_error);
    RandomStream rng(1);
    CHECK_THROWS_AS(simulate_thread_agent(p, rng), parameter_error);
    CHECK_THROWS_AS(simulate_size_analytic(p, rng), parameter_error);

    p = growth_params();
    p.delta0 = 0.0;
    CHECK_THROWS_AS(p.validate(), parameter_error);
}

TEST_CASE("attach_yule probabilities") {
    Thread root_only;
    root_only.events.push_back({0, 0, 0.0});
    RandomStream rng(2);
    CHECK(attach_yule(root_only, 1.0, rng) == 0);

    // two nodes, k_root = 1, k_1 = 0, delta0 = 1: weights 2 and 1
    Thread two;
    two.events.push_back({0, 0, 0.0});
    two.events.push_back({1, 0, 1.0});
    int hits_root = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i)
        if (attach_yule(two, 1.0, rng) == 0) ++hits_root;
    CHECK(static_cast<double>(hits_root) / n == doctest::Approx(2.0 / 3.0).epsilon(0.015));

    // huge delta0 washes out the degrees: uniform attachment
    Thread chain;
    chain.events.push_back({0, 0, 0.0});
    for (std::uint32_t i = 1; i <= 4; ++i) chain.events.push_back({i, i - 1, double(i)});
    std::map<std::uint32_t, int> counts;
    for (int i = 0; i < 100000; ++i) counts[attach_yule(chain, 1e6, rng)]++;
    double chi2 = 0.0;
    for (auto& [node, cnt] : counts) {
        const double expect = 100000.0 / 5.0;
        chi2 += (cnt - expect) * (cnt - expect) / expect;
    }
    CHECK(chi2 < 13.3);  // chi-square(4df) well below the 1% point
}

TEST_CASE("attachment frequencies match node weights on a mixed tree") {
    // star-plus-chain: 0 <- {1, 2, 3}, 3 <- 4, 4 <- 5
    Thread th;
    th.events.push_back({0, 0, 0.0});
    th.events.push_back({1, 0, 1.0});
    th.events.push_back({2, 0, 2.0});
    th.events.push_back({3, 0, 3.0});
    th.events.push_back({4, 3, 4.0});
    th.events.push_back({5, 4, 5.0});

    const double delta0 = 0.7;
    const double weights[6] = {3.7, 0.7, 0.7, 1.7, 1.7, 0.7};  // indegree + delta0
    double total = 0.0;
    for (double w : weights) total += w;

    RandomStream rng(55);
    const int n = 200000;
    int counts[6] = {0, 0, 0, 0, 0, 0};
    for (int i = 0; i < n; ++i) counts[attach_yule(th, delta0, rng)]++;
    for (int j = 0; j < 6; ++j)
        CHECK(static_cast<double>(counts[j]) / n ==
              doctest::Approx(weights[j] / total).epsilon(0.05));
}

TEST_CASE("agent simulation structure and determinism") {
    TopicParams p = growth_params();
    RandomStream r1 = RandomStream::derive(11, 0), r2 = RandomStream::derive(11, 0);
    Thread a = simulate_thread_agent(p, r1);
    Thread b = simulate_thread_agent(p, r2);
    REQUIRE(a.events.size() == b.events.size());
    for (std::size_t i = 0; i < a.events.size(); ++i) {
        CHECK(a.events[i].id == b.events[i].id);
        CHECK(a.events[i].parent == b.events[i].parent);
        CHECK(a.events[i].time == b.events[i].time);
    }

    // valid tree rooted at 0, chronological, inside the exposure window
    for (const Thread& th : simulate_many(p, 50, 13)) {
        REQUIRE_FALSE(th.events.empty());
        CHECK(th.events[0].id == 0);
        CHECK(th.events[0].time == 0.0);
        double prev = 0.0;
        for (std::size_t i = 1; i < th.events.size(); ++i) {
            CHECK(th.events[i].id == i);
            CHECK(th.events[i].parent < th.events[i].id);
            CHECK(th.events[i].time >= prev);
            CHECK(th.events[i].time <= th.exposure_duration);
            prev = th.events[i].time;
        }
    }

    // zero interestingness: nothing ever joins
    TopicParams quiet = growth_params();
    quiet.gamma = 0.0;
    quiet.user_count = 1;
    RandomStream rq(3);
    Thread empty = simulate_thread_agent(quiet, rq);
    CHECK(empty.comment_count() == 0);
}

TEST_CASE("fresh-renewal user model") {
    TopicParams p = growth_params();
    p.user_model = UserModel::fresh_renewal;
    p.waiting = TruncatedPareto{1.0, 1e4, 1.2};
    for (const Thread& th : simulate_many(p, 20, 17)) {
        // a fresh user's first event waits at least the law's lower bound
        for (std::size_t i = 1; i < th.events.size(); ++i) CHECK(th.events[i].time >= 1.0);
    }
    RandomStream r1 = RandomStream::derive(19, 4), r2 = RandomStream::derive(19, 4);
    Thread a = simulate_thread_agent(p, r1), b = simulate_thread_agent(p, r2);
    CHECK(a.events.size() == b.events.size());
}

TEST_CASE("growth law: pooled slopes match the exponent relation") {
    // 500 topics; the discovery rate decays as t^(c0 - c) while the
    // exposure scale keeps accept probabilities below one
    const std::vector<Thread> threads = simulate_many(growth_params(), 500, 7);
    const std::vector<double> times = pooled_times(threads);
    const double lo = quantile(times, 0.25), hi = quantile(times, 0.95);

    const GrowthCurves g = growth_curves(threads, 60, 0.05);
    const RegressionFit nfit = loglog_regression(clip_curve(g.n_of_t, lo, hi));
    const RegressionFit dfit = loglog_regression(clip_curve(g.dn_dt, lo, hi));

    CHECK(nfit.slope == doctest::Approx(0.3).epsilon(0.05 / 0.3));
    CHECK(dfit.slope == doctest::Approx(-0.7).epsilon(0.1 / 0.7));
    CHECK(nfit.slope - dfit.slope == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("growth law at slow exposure: cumulative slope only") {
    // with mean exposure 1000 the accept probability saturates late in
    // the window; N(t) keeps its exponent while dN/dt steepens
    const std::vector<Thread> threads = simulate_many(growth_params(0.001), 500, 7);
    const std::vector<double> times = pooled_times(threads);
    const GrowthCurves g = growth_curves(threads, 60, 0.05);
    const RegressionFit nfit =
        loglog_regression(clip_curve(g.n_of_t, quantile(times, 0.5), quantile(times, 0.95)));
    CHECK(nfit.slope == doctest::Approx(0.3).epsilon(0.05 / 0.3));
}

TEST_CASE("mean-field size and analytic sampler") {
    TopicParams p = growth_params();
    p.gamma = 1.0 / p.user_count;  // gamma' = 1
    p.c0 = p.c;                    // c' = 1
    CHECK(mean_field_size(p, 7.0) == doctest::Approx(7.0));

    p = growth_params();
    p.gamma = 2.0 / p.user_count;  // gamma' = 2
    p.c0 = p.c - 0.5;              // c' = 0.5
    CHECK(mean_field_size(p, 25.0) == doctest::Approx(10.0));

    RandomStream r1(5), r2(5);
    CHECK(simulate_size_analytic(p, r1) == simulate_size_analytic(p, r2));
}

TEST_CASE("predicted size cdf: exponential exposure") {
    TopicParams p = growth_params();
    p.c0 = p.c;  // c' = 1
    const ExponentialLaw& expo = std::get<ExponentialLaw>(p.exposure);
    CHECK(predicted_size_cdf(p, 0.0) == 0.0);
    for (double n : {1.0, 10.0, 300.0}) {
        const double direct = 1.0 - std::exp(-expo.lambda * n / p.gamma_prime());
        CHECK(predicted_size_cdf(p, n) == doctest::Approx(direct).epsilon(1e-12));
    }

    // general c': matches the Weibull law with shape 1/c', scale gamma'/lambda^c'
    p = growth_params();
    p.c0 = p.c - 0.5;  // c' = 0.5
    const double c_prime = 0.5;
    WeibullLaw w{1.0 / c_prime, p.gamma_prime() / std::pow(expo.lambda, c_prime)};
    for (double n : {5.0, 50.0, 500.0, 5000.0})
        CHECK(predicted_size_cdf(p, n) == doctest::Approx(w.cdf(n)).epsilon(1e-12));
}

TEST_CASE("predicted size cdf: pareto exposure") {
    TopicParams p = growth_params();
    p.c0 = p.c - 0.5;  // c' = 0.5
    p.exposure = ParetoLaw{1.0, 1.5};
    // zero mass below gamma' * t_min^c'
    CHECK(predicted_size_cdf(p, 9.99) == 0.0);
    CHECK(predicted_size_cdf(p, 10.0) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(predicted_size_cdf(p, 1e9) > 0.999);

    // density log-slope is -(alpha/c' + 1) = -4
    auto density = [&](double n) {
        const double h = 1e-4 * n;
        return (predicted_size_cdf(p, n + h) - predicted_size_cdf(p, n - h)) / (2.0 * h);
    };
    for (double n : {20.0, 100.0, 1000.0}) {
        const double slope =
            (std::log(density(n * 1.01)) - std::log(density(n))) / std::log(1.01);
        CHECK(slope == doctest::Approx(-4.0).epsilon(0.01));
    }
}

TEST_CASE("analytic sampler agrees with the predicted size law") {
    const std::size_t n = 20000;
    // exponential exposure
    TopicParams p = growth_params();
    p.c0 = p.c - 0.5;
    {
        RandomStream rng(31);
        std::vector<double> sizes(n);
        for (auto& s : sizes) s = static_cast<double>(simulate_size_analytic(p, rng));
        const double ks = discrete_ks_distance(
            sizes, [&](double v) { return predicted_size_cdf(p, v + 0.5); });
        CHECK(ks < 0.015);
    }
    // pareto exposure
    p.exposure = ParetoLaw{1.0, 1.5};
    {
        RandomStream rng(32);
        std::vector<double> sizes(n);
        for (auto& s : sizes) s = static_cast<double>(simulate_size_analytic(p, rng));
        const double ks = discrete_ks_distance(
            sizes, [&](double v) { return predicted_size_cdf(p, v + 0.5); });
        CHECK(ks < 0.015);
    }
}

TEST_CASE("size trichotomy: weibull shape recovers 1/c'") {
    for (double c_prime : {0.5, 1.0, 2.0}) {
        TopicParams p = growth_params();
        p.c0 = p.c + c_prime - 1.0;
        RandomStream rng(41 + static_cast<std::uint64_t>(10 * c_prime));
        std::vector<double> sizes;
        sizes.reserve(20000);
        for (int i = 0; i < 20000; ++i) {
            const double s = static_cast<double>(simulate_size_analytic(p, rng));
            if (s > 0.0) sizes.push_back(s);
        }
        const FitResult fit = weibull_mle(sizes);
        CHECK(fit.param(0) == doctest::Approx(1.0 / c_prime).epsilon(0.05));
    }
}

TEST_CASE("predicted indegree cdf") {
    CHECK(predicted_indegree_cdf(1.0, 0.0) == 0.0);
    CHECK(predicted_indegree_cdf(1.0, 1.0) == doctest::Approx(0.75));
    CHECK(predicted_indegree_cdf(1.0, 1e12) == doctest::Approx(1.0));
    CHECK(predicted_indegree_cdf(2.5, 3.0) ==
          doctest::Approx(1.0 - std::pow(3.0 / 2.5 + 1.0, -3.5)).epsilon(1e-12));
    CHECK_THROWS_AS(predicted_indegree_cdf(0.0, 1.0), parameter_error);
}

TEST_CASE("indegree histogram basics") {
    Thread root_only;
    root_only.events.push_back({0, 0, 0.0});
    auto hist = indegree_histogram({&root_only, 1});
    REQUIRE(hist.size() == 1);
    CHECK(hist.at(0) == 1);

    // chain 0 <- 1 <- 2: two nodes with one child each, one leaf
    Thread chain;
    chain.events.push_back({0, 0, 0.0});
    chain.events.push_back({1, 0, 1.0});
    chain.events.push_back({2, 1, 2.0});
    hist = indegree_histogram({&chain, 1});
    CHECK(hist.at(0) == 1);
    CHECK(hist.at(1) == 2);

    auto no_root = indegree_histogram({&chain, 1}, false);
    CHECK(no_root.at(0) == 1);
    CHECK(no_root.at(1) == 1);

    auto cc = indegree_ccdf(hist);
    REQUIRE(cc.size() == 2);
    CHECK(cc[0] == std::pair{0.0, 1.0});
    CHECK(cc[1] == std::pair{1.0, 2.0 / 3.0});
}

TEST_CASE("pooled indegree tail follows the offset pareto scaling") {
    TopicParams p;
    p.gamma = 1.0;
    p.c0 = 0.3;
    p.c = 1.2;  // c' = 0.1; growth shape is irrelevant to attachment order
    p.user_count = 20000;
    p.delta0 = 1.0;
    p.exposure = ExponentialLaw{1.0 / 3000.0};
    p.waiting = TruncatedPareto{0.01, 1e6, 1.2};

    const std::vector<Thread> threads = simulate_many(p, 150, 7);
    std::size_t pool = 0;
    for (const Thread& th : threads) pool += th.comment_count();
    CHECK(pool > 100000);

    const auto cc = indegree_ccdf(indegree_histogram(threads, true));
    CurvePoints pts;
    for (const auto& [l, p_geq] : cc)
        if (l >= 15.0 && l <= 45.0 && p_geq * static_cast<double>(pool) >= 30.0)
            pts.points.emplace_back(l / p.delta0 + 1.0, p_geq);
    const RegressionFit fit = loglog_regression(pts);
    CHECK(fit.slope == doctest::Approx(-2.0).epsilon(0.05));  // -(1 + delta0)
}
