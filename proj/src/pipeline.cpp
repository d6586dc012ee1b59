#include "geopulse/pipeline.hpp"

#include <algorithm>

namespace geopulse {

namespace {

enum class Outcome { Attributed, Stopped, Unattributed };

struct WorkResult {
    Outcome outcome = Outcome::Unattributed;
    AttributedTweet tweet;
};

WorkResult attribute_one(const TweetRecord& r, const PipelineContext& ctx) {
    WorkResult w;
    if (!passes_stoplist(r.text, *ctx.stoplist)) {
        w.outcome = Outcome::Stopped;
        return w;
    }
    if (r.place_full_name) {
        w.tweet.states = ctx.states->match(*r.place_full_name);
    }
    if (w.tweet.states.empty()) {
        w.outcome = Outcome::Unattributed;
        return w;
    }
    w.outcome = Outcome::Attributed;
    w.tweet.tweet_id = r.tweet_id;
    w.tweet.user = r.user_screen_name;
    w.tweet.day = r.created_at.civil_day();
    w.tweet.provinces = ctx.provinces->match(r.text);
    w.tweet.polarity = score_polarity(r.text, *ctx.lexicon);
    w.tweet.chinese = is_chinese(r.user_screen_name, *ctx.surnames,
                                 ctx.surname_mode);
    const UserFeatures f = user_features(r);
    w.tweet.followers = double(r.followers);
    w.tweet.followees = double(r.followees);
    w.tweet.retweet_count = double(r.retweet_count);
    w.tweet.experience = double(f.experience_days);
    w.tweet.intensity = f.intensity;
    w.tweet.reply = r.is_reply ? 1.0 : 0.0;
    return w;
}

}  // namespace

std::vector<AttributedTweet> attribute_corpus(
    std::span<const TweetRecord> records, const PipelineContext& ctx,
    unsigned threads, AttributionStats* stats) {
    auto results = parallel_map(records, threads, [&](const TweetRecord& r) {
        return attribute_one(r, ctx);
    });

    AttributionStats s;
    s.input = records.size();
    std::vector<AttributedTweet> out;
    out.reserve(results.size());
    for (auto& w : results) {
        switch (w.outcome) {
            case Outcome::Stopped:
                ++s.stopped;
                break;
            case Outcome::Unattributed:
                ++s.unattributed;
                break;
            case Outcome::Attributed:
                ++s.attributed;
                out.push_back(std::move(w.tweet));
                break;
        }
    }
    if (stats) *stats = s;
    return out;
}

std::vector<TweetRecord> filter_window(std::vector<TweetRecord> records,
                                       std::int64_t first_day,
                                       std::int64_t last_day) {
    std::erase_if(records, [&](const TweetRecord& r) {
        const std::int64_t d = r.created_at.civil_day();
        return d < first_day || d > last_day;
    });
    return records;
}

}  // namespace geopulse
