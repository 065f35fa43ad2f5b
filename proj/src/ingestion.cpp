#include "convsim/ingestion.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "convsim/errors.hpp"
#include "convsim/renewal.hpp"

namespace convsim {

namespace {

using json = nlohmann::ordered_json;

constexpr double kSecondsPerMinute = 60.0;

std::int64_t minutes_to_epoch(std::int64_t created_at, double minutes) {
    return created_at + static_cast<std::int64_t>(std::llround(minutes * kSecondsPerMinute));
}

double epoch_to_minutes(std::int64_t created_at, std::int64_t ts) {
    return static_cast<double>(ts - created_at) / kSecondsPerMinute;
}

struct PendingComment {
    std::string topic_id;
    RawComment comment;
    std::size_t line_no;
};

void warn(ParseReport* report, std::size_t line_no, const std::string& msg) {
    if (report && report->warnings.size() < 200)
        report->warnings.push_back("line " + std::to_string(line_no) + ": " + msg);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

Corpus parse_corpus(const std::string& path, CorpusFormat format, ParseReport* report,
                    bool strict) {
    std::ifstream in(path);
    if (!in) throw data_error("parse_corpus: cannot open " + path);

    Corpus corpus;
    std::vector<PendingComment> pending;
    ParseReport local;
    ParseReport& rep = report ? *report : local;
    rep = ParseReport{};

    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;

    while (std::getline(in, line)) {
        ++line_no;
        rep.lines = line_no;
        if (line.empty() || line[0] == '#') continue;

        if (format == CorpusFormat::jsonl) {
            json obj = json::parse(line, nullptr, false);
            if (obj.is_discarded() || !obj.is_object()) {
                ++rep.malformed;
                warn(&rep, line_no, "not a JSON object");
                continue;
            }
            try {
                if (obj.value("kind", "") == "topic") {
                    Topic& t = corpus.topics[obj.at("topic_id").get<std::string>()];
                    t.created_at = obj.at("created_at").get<std::int64_t>();
                    if (obj.contains("removed_at") && !obj["removed_at"].is_null())
                        t.removed_at = obj["removed_at"].get<std::int64_t>();
                } else {
                    PendingComment pc;
                    pc.topic_id = obj.at("topic_id").get<std::string>();
                    pc.comment.comment_id = obj.at("comment_id").get<std::string>();
                    pc.comment.parent_id = obj.value("parent_id", "");
                    pc.comment.user_id = obj.value("user_id", "");
                    pc.comment.ts = obj.at("ts").get<std::int64_t>();
                    pc.line_no = line_no;
                    pending.push_back(std::move(pc));
                }
            } catch (const json::exception& e) {
                ++rep.malformed;
                warn(&rep, line_no, e.what());
            }
        } else {
            if (!header_seen) {  // "kind,topic_id,comment_id,parent_id,user_id,ts,created_at,removed_at"
                header_seen = true;
                continue;
            }
            auto f = split_csv(line);
            if (f.size() < 8) {
                ++rep.malformed;
                warn(&rep, line_no, "expected 8 CSV fields");
                continue;
            }
            try {
                if (f[0] == "topic") {
                    Topic& t = corpus.topics[f[1]];
                    t.created_at = std::stoll(f[6]);
                    if (!f[7].empty()) t.removed_at = std::stoll(f[7]);
                } else {
                    PendingComment pc;
                    pc.topic_id = f[1];
                    pc.comment = RawComment{f[2], f[3], f[4], std::stoll(f[5])};
                    pc.line_no = line_no;
                    pending.push_back(std::move(pc));
                }
            } catch (const std::exception&) {
                ++rep.malformed;
                warn(&rep, line_no, "bad numeric field");
            }
        }
    }

    // Attach comments; topics never declared get an implicit header at
    // their earliest comment.
    std::unordered_map<std::string, std::int64_t> earliest;
    for (const auto& pc : pending) {
        auto [it, fresh] = earliest.try_emplace(pc.topic_id, pc.comment.ts);
        if (!fresh) it->second = std::min(it->second, pc.comment.ts);
    }
    for (const auto& pc : pending) {
        auto it = corpus.topics.find(pc.topic_id);
        if (it == corpus.topics.end()) {
            Topic t;
            t.created_at = earliest.at(pc.topic_id);
            it = corpus.topics.emplace(pc.topic_id, std::move(t)).first;
            ++rep.implicit_topics;
            warn(&rep, pc.line_no, "topic " + pc.topic_id + " has no header line");
        }
        if (pc.comment.ts < it->second.created_at) {
            ++rep.dropped_pre_creation;
            warn(&rep, pc.line_no, "comment " + pc.comment.comment_id + " predates topic creation");
            continue;
        }
        it->second.comments.push_back(pc.comment);
    }

    // Resolve parents within each topic.
    for (auto& [topic_id, topic] : corpus.topics) {
        std::unordered_set<std::string> ids;
        ids.reserve(topic.comments.size());
        for (const auto& c : topic.comments) ids.insert(c.comment_id);
        for (auto& c : topic.comments) {
            if (c.parent_id.empty() || ids.count(c.parent_id)) continue;
            if (strict)
                throw data_error("parse_corpus: unknown parent_id '" + c.parent_id +
                                 "' in topic " + topic_id);
            ++rep.reattached_orphans;
            warn(&rep, 0, "topic " + topic_id + ": parent '" + c.parent_id +
                              "' unknown; comment " + c.comment_id + " reattached to root");
            c.parent_id.clear();
        }
        std::stable_sort(topic.comments.begin(), topic.comments.end(),
                         [](const RawComment& a, const RawComment& b) {
                             return a.ts != b.ts ? a.ts < b.ts : a.comment_id < b.comment_id;
                         });
    }

    rep.comments = corpus.comment_count();
    return corpus;
}

void write_corpus_jsonl(const std::string& path, const Corpus& corpus,
                        const std::string& header_comment) {
    std::ofstream out(path);
    if (!out) throw data_error("write_corpus_jsonl: cannot open " + path);
    if (!header_comment.empty()) out << "# " << header_comment << "\n";
    for (const auto& [topic_id, topic] : corpus.topics) {
        json t;
        t["kind"] = "topic";
        t["topic_id"] = topic_id;
        t["created_at"] = topic.created_at;
        if (topic.removed_at) t["removed_at"] = *topic.removed_at;
        out << t.dump() << "\n";
        for (const auto& c : topic.comments) {
            json e;
            e["topic_id"] = topic_id;
            e["comment_id"] = c.comment_id;
            e["parent_id"] = c.parent_id;
            e["user_id"] = c.user_id;
            e["ts"] = c.ts;
            out << e.dump() << "\n";
        }
    }
}

void write_corpus_csv(const std::string& path, const Corpus& corpus,
                      const std::string& header_comment) {
    std::ofstream out(path);
    if (!out) throw data_error("write_corpus_csv: cannot open " + path);
    if (!header_comment.empty()) out << "# " << header_comment << "\n";
    out << "kind,topic_id,comment_id,parent_id,user_id,ts,created_at,removed_at\n";
    for (const auto& [topic_id, topic] : corpus.topics) {
        out << "topic," << topic_id << ",,,,," << topic.created_at << ",";
        if (topic.removed_at) out << *topic.removed_at;
        out << "\n";
        for (const auto& c : topic.comments)
            out << "comment," << topic_id << "," << c.comment_id << "," << c.parent_id << ","
                << c.user_id << "," << c.ts << ",,\n";
    }
}

WaitingTimes waiting_times(const Corpus& corpus) {
    std::unordered_map<std::string, std::vector<std::int64_t>> by_user;
    for (const auto& [topic_id, topic] : corpus.topics)
        for (const auto& c : topic.comments) by_user[c.user_id].push_back(c.ts);

    WaitingTimes out;
    for (auto& [user, ts] : by_user) {
        if (ts.size() < 2) continue;
        std::sort(ts.begin(), ts.end());
        for (std::size_t i = 1; i < ts.size(); ++i) {
            const double gap = static_cast<double>(ts[i] - ts[i - 1]) / kSecondsPerMinute;
            if (gap > 0.0)
                out.minutes.push_back(gap);
            else
                ++out.zero_gaps_dropped;
        }
    }
    // by_user iteration order is unspecified; keep output deterministic.
    std::sort(out.minutes.begin(), out.minutes.end());
    return out;
}

ExposureDurations exposure_durations(const Corpus& corpus) {
    ExposureDurations out;
    for (const auto& [topic_id, topic] : corpus.topics) {
        if (!topic.removed_at) {
            ++out.topics_skipped;
            continue;
        }
        out.minutes.push_back(epoch_to_minutes(topic.created_at, *topic.removed_at));
    }
    return out;
}

double detect_inflection(const Topic& topic, double q, bool use_removed) {
    if (!(q > 0.0) || q > 1.0) throw parameter_error("detect_inflection: q must be in (0, 1]");
    if (use_removed && topic.removed_at)
        return epoch_to_minutes(topic.created_at, *topic.removed_at);
    if (topic.comments.size() < 5)
        throw data_error("detect_inflection: need at least 5 comments");

    std::vector<double> times;
    times.reserve(topic.comments.size());
    for (const auto& c : topic.comments) times.push_back(epoch_to_minutes(topic.created_at, c.ts));
    std::sort(times.begin(), times.end());
    const std::size_t need = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(times.size())) + 1e-9);
    return times[std::min(times.size() - 1, std::max<std::size_t>(need, 1) - 1)];
}

double before_after_ratio(const Topic& topic, double inflection_minutes) {
    if (topic.comments.empty()) throw data_error("before_after_ratio: topic has no comments");
    std::size_t before = 0;
    for (const auto& c : topic.comments)
        if (epoch_to_minutes(topic.created_at, c.ts) <= inflection_minutes) ++before;
    return static_cast<double>(before) / static_cast<double>(topic.comments.size());
}

// ---------------------------------------------------------------------------
// Thread bridges

namespace {

std::string zero_pad(std::uint64_t v, int width) {
    std::string s = std::to_string(v);
    while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
    return s;
}

}  // namespace

Corpus corpus_from_threads(std::span<const Thread> threads, std::int64_t first_created_at,
                           std::int64_t spacing_seconds) {
    Corpus corpus;
    for (std::size_t k = 0; k < threads.size(); ++k) {
        const Thread& th = threads[k];
        const std::string topic_id = "t" + zero_pad(k, 6);
        Topic topic;
        topic.created_at = first_created_at + static_cast<std::int64_t>(k) * spacing_seconds;
        topic.removed_at = minutes_to_epoch(topic.created_at, th.exposure_duration);
        for (std::size_t e = 1; e < th.events.size(); ++e) {
            const CommentEvent& ev = th.events[e];
            RawComment c;
            c.comment_id = topic_id + "-c" + zero_pad(ev.id, 6);
            c.parent_id = ev.parent == 0 ? "" : topic_id + "-c" + zero_pad(ev.parent, 6);
            // thread simulations carry no cross-topic user identity, so
            // ids stay unique per topic
            c.user_id = topic_id + "-u" + zero_pad(e, 6);
            c.ts = minutes_to_epoch(topic.created_at, ev.time);
            topic.comments.push_back(std::move(c));
        }
        corpus.topics.emplace(topic_id, std::move(topic));
    }
    return corpus;
}

Thread topic_to_thread(const Topic& topic) {
    Thread th;
    th.exposure_duration = topic.removed_at
                               ? epoch_to_minutes(topic.created_at, *topic.removed_at)
                               : (topic.comments.empty()
                                      ? 0.0
                                      : epoch_to_minutes(topic.created_at,
                                                         std::max_element(
                                                             topic.comments.begin(),
                                                             topic.comments.end(),
                                                             [](const RawComment& a,
                                                                const RawComment& b) {
                                                                 return a.ts < b.ts;
                                                             })
                                                             ->ts));
    th.events.push_back(CommentEvent{0, 0, 0.0});

    std::vector<const RawComment*> ordered;
    ordered.reserve(topic.comments.size());
    for (const auto& c : topic.comments) ordered.push_back(&c);
    std::stable_sort(ordered.begin(), ordered.end(), [](const RawComment* a, const RawComment* b) {
        return a->ts != b->ts ? a->ts < b->ts : a->comment_id < b->comment_id;
    });

    std::unordered_map<std::string, std::uint32_t> ordinal;
    ordinal.reserve(ordered.size());
    for (std::size_t i = 0; i < ordered.size(); ++i)
        ordinal[ordered[i]->comment_id] = static_cast<std::uint32_t>(i + 1);

    for (std::size_t i = 0; i < ordered.size(); ++i) {
        const RawComment& c = *ordered[i];
        std::uint32_t parent = 0;
        if (!c.parent_id.empty()) {
            auto it = ordinal.find(c.parent_id);
            // Later-timestamped parents would break the tree order; treat
            // them like unknown parents and fall back to the root.
            if (it != ordinal.end() && it->second < i + 1) parent = it->second;
        }
        th.events.push_back(CommentEvent{static_cast<std::uint32_t>(i + 1), parent,
                                         epoch_to_minutes(topic.created_at, c.ts)});
    }
    return th;
}

Corpus simulate_user_activity_corpus(const TruncatedPareto& waiting, std::uint32_t users,
                                     double horizon_minutes, RandomStream& rng,
                                     std::int64_t created_at) {
    Corpus corpus;
    Topic topic;
    topic.created_at = created_at;
    std::uint64_t next_comment = 0;
    for (std::uint32_t u = 0; u < users; ++u) {
        const RenewalTrace trace = simulate_renewal(waiting, horizon_minutes, rng);
        for (double t : trace.event_times) {
            RawComment c;
            c.comment_id = "c" + zero_pad(next_comment++, 8);
            c.user_id = "u" + zero_pad(u, 6);
            c.ts = minutes_to_epoch(created_at, t);
            topic.comments.push_back(std::move(c));
        }
    }
    std::stable_sort(topic.comments.begin(), topic.comments.end(),
                     [](const RawComment& a, const RawComment& b) {
                         return a.ts != b.ts ? a.ts < b.ts : a.comment_id < b.comment_id;
                     });
    corpus.topics.emplace("site", std::move(topic));
    return corpus;
}

void write_samples_csv(const std::string& path, std::span<const double> values,
                       const std::string& column, const std::string& header_comment) {
    std::ofstream out(path);
    if (!out) throw data_error("write_samples_csv: cannot open " + path);
    if (!header_comment.empty()) out << "# " << header_comment << "\n";
    out << column << "\n";
    char buf[40];
    for (double v : values) {
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        out << buf << "\n";
    }
}

}  // namespace convsim
