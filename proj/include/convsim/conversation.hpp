#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "convsim/distributions.hpp"
#include "convsim/random.hpp"

namespace convsim {

// How a user's commenting stream feeds a topic.
//
//   discovery:      each user comments at most once, at the first event
//                   of their (long-running) site-wide renewal stream
//                   after topic creation; that instant follows the
//                   forward-recurrence law, whose density decays as
//                   y^-c.  This is the regime behind the t^(c'-1)
//                   growth rate and is the default.
//   fresh_renewal:  each user starts a renewal process from age zero at
//                   topic creation and every event is a comment
//                   opportunity.  The long-run event rate of such a
//                   stream is the constant 1/mu, so growth bends toward
//                   t^c0; kept for comparison experiments.
enum class UserModel { discovery, fresh_renewal };

// Full generative parameter set for one topic.
struct TopicParams {
    double gamma = 0.05;   // interestingness base; accept probability is min(1, gamma * t^c0)
    double c0 = 0.0;       // social-feedback exponent
    double c = 1.5;        // waiting-time tail exponent
    std::uint32_t user_count = 100;  // M
    double delta0 = 1.0;   // attachment offset for zero-in-degree nodes
    ExposureLaw exposure = ExponentialLaw{0.001};
    TruncatedPareto waiting{1.0, 1e6, 1.5};
    UserModel user_model = UserModel::discovery;

    // Effective growth exponent; threads grow like t^growth_exponent.
    double growth_exponent() const { return -c + c0 + 1.0; }
    // gamma' = gamma * M
    double gamma_prime() const { return gamma * user_count; }

    void validate() const;  // throws parameter_error; requires growth_exponent() > 0
};

struct CommentEvent {
    std::uint32_t id = 0;      // 0 is the root post
    std::uint32_t parent = 0;  // parent < id for every non-root event
    double time = 0.0;         // minutes since topic creation
};

struct Thread {
    TopicParams params;
    double exposure_duration = 0.0;       // T
    std::vector<CommentEvent> events;     // events[0] is the root at time 0

    std::size_t comment_count() const { return events.empty() ? 0 : events.size() - 1; }
};

// Incremental preferential-attachment state: P(parent = j) proportional
// to (indegree_j + delta0) over all existing nodes including the root.
// Weights live in a Fenwick tree so draws and updates are O(log n).
class YuleAttachment {
public:
    explicit YuleAttachment(double delta0);

    std::uint32_t pick_parent(RandomStream& rng) const;
    void add_node();  // appends a node with in-degree 0
    void add_node(std::uint32_t parent);

    std::size_t node_count() const { return count_; }

private:
    void bump(std::size_t node, double amount);

    double delta0_;
    double total_weight_;
    std::size_t count_;
    std::vector<double> tree_;  // Fenwick partial sums over node weights
};

// One attachment draw against an existing thread's final state.
std::uint32_t attach_yule(const Thread& thread, double delta0, RandomStream& rng);

// Event-level simulation of a whole thread: draws T, lets M users
// discover and accept, and grows the reply tree by Yule attachment.
Thread simulate_thread_agent(const TopicParams& params, RandomStream& rng);

// Size a thread would reach by time t under the mean-field growth law
// N(t) = gamma' * t^c'.
double mean_field_size(const TopicParams& params, double t);

// Shortcut sampler: draws T and returns round(gamma' * T^c').
std::uint64_t simulate_size_analytic(const TopicParams& params, RandomStream& rng);

// Closed-form law of the analytic size N(T) = gamma' T^c' induced by
// the exposure law.  Exponential exposure gives a Weibull with shape
// 1/c' and scale gamma'/lambda^c'; Pareto exposure gives a Pareto-type
// law that vanishes below gamma' * t_min^c'.
double predicted_size_cdf(const TopicParams& params, double n);

// P(in-degree < l) = 1 - (l/delta0 + 1)^(-1-delta0); exposure-independent.
double predicted_indegree_cdf(double delta0, double l);

// Pools final in-degrees over threads; the root is counted unless
// include_root is false.
std::map<std::uint32_t, std::size_t> indegree_histogram(std::span<const Thread> threads,
                                                        bool include_root = true);

// P(k >= l) for each l present in (or implied by) the histogram.
std::vector<std::pair<double, double>> indegree_ccdf(
    const std::map<std::uint32_t, std::size_t>& hist);

}  // namespace convsim
