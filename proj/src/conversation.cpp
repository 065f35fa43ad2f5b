#include "convsim/conversation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "convsim/errors.hpp"
#include "convsim/renewal.hpp"

namespace convsim {

void TopicParams::validate() const {
    if (!(gamma >= 0.0)) throw parameter_error("TopicParams: gamma must be >= 0");
    if (!(c0 >= 0.0)) throw parameter_error("TopicParams: c0 must be >= 0");
    if (!(c > 0.0)) throw parameter_error("TopicParams: c must be > 0");
    if (user_count < 1) throw parameter_error("TopicParams: need at least one user");
    if (!(delta0 > 0.0)) throw parameter_error("TopicParams: delta0 must be > 0");
    std::visit([](const auto& l) { l.validate(); }, exposure);
    waiting.validate();
    if (!(growth_exponent() > 0.0))
        throw parameter_error("TopicParams: non-growing regime, -c + c0 + 1 = " +
                              std::to_string(growth_exponent()) + " must be > 0");
}

// ---------------------------------------------------------------------------
// Yule attachment

YuleAttachment::YuleAttachment(double delta0)
    : delta0_(delta0), total_weight_(0.0), count_(0) {
    if (!(delta0 > 0.0)) throw parameter_error("YuleAttachment: delta0 must be > 0");
    add_node();  // the root
}

void YuleAttachment::bump(std::size_t node, double amount) {
    for (std::size_t i = node + 1; i <= tree_.size(); i += i & (~i + 1))
        tree_[i - 1] += amount;
    total_weight_ += amount;
}

std::uint32_t YuleAttachment::pick_parent(RandomStream& rng) const {
    double target = rng.uniform() * total_weight_;
    // descend the Fenwick structure toward the node whose cumulative
    // weight interval contains the target
    std::size_t pos = 0;
    std::size_t mask = std::bit_floor(tree_.size());
    while (mask != 0) {
        const std::size_t next = pos + mask;
        if (next <= tree_.size() && tree_[next - 1] < target) {
            target -= tree_[next - 1];
            pos = next;
        }
        mask >>= 1;
    }
    return static_cast<std::uint32_t>(std::min(pos, count_ - 1));
}

void YuleAttachment::add_node() {
    const std::size_t node = count_++;
    // append a zero-weight slot: Fenwick cell i covers (i - lowbit(i), i],
    // so seed it with the sub-block sums already inside that range
    const std::size_t i = tree_.size() + 1;  // 1-based
    const std::size_t span = i & (~i + 1);
    double sum = 0.0;
    for (std::size_t j = i - 1; j > i - span; j -= j & (~j + 1)) sum += tree_[j - 1];
    tree_.push_back(sum);
    bump(node, delta0_);
}

void YuleAttachment::add_node(std::uint32_t parent) {
    bump(parent, 1.0);
    add_node();
}

std::uint32_t attach_yule(const Thread& thread, double delta0, RandomStream& rng) {
    if (thread.events.empty()) throw data_error("attach_yule: thread has no root");
    YuleAttachment state(delta0);
    for (std::size_t i = 1; i < thread.events.size(); ++i)
        state.add_node(thread.events[i].parent);
    return state.pick_parent(rng);
}

// ---------------------------------------------------------------------------
// Agent simulation

Thread simulate_thread_agent(const TopicParams& params, RandomStream& rng) {
    params.validate();

    Thread thread;
    thread.params = params;
    thread.exposure_duration = exposure_sample(params.exposure, rng);
    thread.events.push_back(CommentEvent{0, 0, 0.0});

    const double T = thread.exposure_duration;
    std::vector<double> accepted;

    if (params.user_model == UserModel::discovery) {
        const ForwardRecurrence fr{params.waiting};
        for (std::uint32_t m = 0; m < params.user_count; ++m) {
            const double y = fr.sample(rng);
            if (y > T) continue;
            const double p = std::min(1.0, params.gamma * std::pow(y, params.c0));
            if (rng.uniform() < p) accepted.push_back(y);
        }
    } else {
        for (std::uint32_t m = 0; m < params.user_count; ++m) {
            double t = 0.0;
            for (;;) {
                t += params.waiting.sample(rng);
                if (t > T) break;
                const double p = std::min(1.0, params.gamma * std::pow(t, params.c0));
                if (rng.uniform() < p) accepted.push_back(t);
            }
        }
    }

    std::sort(accepted.begin(), accepted.end());

    YuleAttachment attach(params.delta0);
    thread.events.reserve(accepted.size() + 1);
    for (double t : accepted) {
        const std::uint32_t parent = attach.pick_parent(rng);
        attach.add_node(parent);
        thread.events.push_back(
            CommentEvent{static_cast<std::uint32_t>(thread.events.size()), parent, t});
    }
    return thread;
}

// ---------------------------------------------------------------------------
// Analytic size law

double mean_field_size(const TopicParams& params, double t) {
    if (t <= 0.0) return 0.0;
    return params.gamma_prime() * std::pow(t, params.growth_exponent());
}

std::uint64_t simulate_size_analytic(const TopicParams& params, RandomStream& rng) {
    params.validate();
    const double T = exposure_sample(params.exposure, rng);
    return static_cast<std::uint64_t>(std::llround(mean_field_size(params, T)));
}

double predicted_size_cdf(const TopicParams& params, double n) {
    params.validate();
    if (n <= 0.0) return 0.0;
    const double c_prime = params.growth_exponent();
    const double t_of_n = std::pow(n / params.gamma_prime(), 1.0 / c_prime);
    // P(N <= n) = P(T <= (n/gamma')^(1/c')) for either exposure family.
    return exposure_cdf(params.exposure, t_of_n);
}

double predicted_indegree_cdf(double delta0, double l) {
    if (!(delta0 > 0.0)) throw parameter_error("predicted_indegree_cdf: delta0 must be > 0");
    if (l <= 0.0) return 0.0;
    return 1.0 - std::pow(l / delta0 + 1.0, -1.0 - delta0);
}

// ---------------------------------------------------------------------------
// In-degree pooling

std::map<std::uint32_t, std::size_t> indegree_histogram(std::span<const Thread> threads,
                                                        bool include_root) {
    std::map<std::uint32_t, std::size_t> hist;
    std::vector<std::uint32_t> indeg;
    for (const Thread& th : threads) {
        if (th.events.empty()) continue;
        indeg.assign(th.events.size(), 0);
        for (std::size_t i = 1; i < th.events.size(); ++i) indeg[th.events[i].parent] += 1;
        for (std::size_t i = include_root ? 0 : 1; i < indeg.size(); ++i) hist[indeg[i]] += 1;
    }
    return hist;
}

std::vector<std::pair<double, double>> indegree_ccdf(
    const std::map<std::uint32_t, std::size_t>& hist) {
    std::vector<std::pair<double, double>> out;
    if (hist.empty()) return out;
    double total = 0.0;
    for (const auto& [k, count] : hist) total += static_cast<double>(count);
    // walk degrees downward, accumulating P(K >= k)
    double tail = 0.0;
    std::vector<std::pair<double, double>> rev;
    for (auto it = hist.rbegin(); it != hist.rend(); ++it) {
        tail += static_cast<double>(it->second);
        rev.emplace_back(static_cast<double>(it->first), tail / total);
    }
    out.assign(rev.rbegin(), rev.rend());
    return out;
}

}  // namespace convsim
