#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "convsim/conversation.hpp"

namespace convsim {

struct RawComment {
    std::string comment_id;
    std::string parent_id;  // empty means reply to the root post
    std::string user_id;
    std::int64_t ts = 0;    // epoch seconds
};

struct Topic {
    std::int64_t created_at = 0;
    std::optional<std::int64_t> removed_at;  // when the topic left the new-items column
    std::vector<RawComment> comments;
};

struct Corpus {
    std::map<std::string, Topic> topics;

    std::size_t comment_count() const {
        std::size_t n = 0;
        for (const auto& [id, t] : topics) n += t.comments.size();
        return n;
    }
};

enum class CorpusFormat { jsonl, csv };

struct ParseReport {
    std::size_t lines = 0;
    std::size_t comments = 0;
    std::size_t malformed = 0;          // unparseable lines (skipped)
    std::size_t dropped_pre_creation = 0;
    std::size_t reattached_orphans = 0; // unknown parent_id, reparented to root
    std::size_t implicit_topics = 0;    // topics without a header line
    std::vector<std::string> warnings;  // carry line numbers
};

// Reads a corpus file.  Lines starting with '#' and blank lines are
// skipped.  Malformed lines and comments timestamped before topic
// creation are dropped and counted; comments whose parent_id is
// unknown are reattached to the root with a warning, unless `strict`
// is set, in which case they raise data_error.
Corpus parse_corpus(const std::string& path, CorpusFormat format, ParseReport* report = nullptr,
                    bool strict = false);

void write_corpus_jsonl(const std::string& path, const Corpus& corpus,
                        const std::string& header_comment = "");
void write_corpus_csv(const std::string& path, const Corpus& corpus,
                      const std::string& header_comment = "");

struct WaitingTimes {
    std::vector<double> minutes;     // pooled over users, site-wide
    std::size_t zero_gaps_dropped = 0;
};

// Gaps between consecutive comments by the same user anywhere in the
// corpus, pooled over users.  Zero gaps (same-second activity) are
// dropped and counted.
WaitingTimes waiting_times(const Corpus& corpus);

struct ExposureDurations {
    std::vector<double> minutes;       // removed_at - created_at per topic
    std::size_t topics_skipped = 0;    // no removal stamp
};

ExposureDurations exposure_durations(const Corpus& corpus);

// Time (minutes since creation) at which the topic's growth saturates:
// the recorded removal stamp when present (and use_removed), otherwise
// the earliest time cumulative comments reach q of the final count.
double detect_inflection(const Topic& topic, double q = 0.95, bool use_removed = true);

// Fraction of comments at or before the inflection time.
double before_after_ratio(const Topic& topic, double inflection_minutes);

// --- Bridges between simulated threads and corpora ------------------------

// Lays threads out as topics with non-overlapping creation stamps;
// event minutes become integer epoch seconds, removal stamps carry the
// exposure duration.
Corpus corpus_from_threads(std::span<const Thread> threads,
                           std::int64_t first_created_at = 1600000000,
                           std::int64_t spacing_seconds = 100000000);

// Rebuilds the event skeleton of a parsed topic: events sorted by
// (time, id), parents resolved to ordinals, the root prepended.
// exposure_duration comes from the removal stamp when present, else
// the last event time.
Thread topic_to_thread(const Topic& topic);

// Renewal-process activity corpus: M users commenting site-wide over
// [0, horizon_minutes] with the given waiting law, all filed under one
// synthetic topic.  Exercises the waiting-time extraction path.
Corpus simulate_user_activity_corpus(const TruncatedPareto& waiting, std::uint32_t users,
                                     double horizon_minutes, RandomStream& rng,
                                     std::int64_t created_at = 1600000000);

void write_samples_csv(const std::string& path, std::span<const double> values,
                       const std::string& column, const std::string& header_comment = "");

}  // namespace convsim
