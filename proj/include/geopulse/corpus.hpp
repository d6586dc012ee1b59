#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geopulse/datetime.hpp"

namespace geopulse {

// One ingested tweet, the field subset of the Twitter REST schema this
// pipeline consumes.
struct TweetRecord {
    std::string tweet_id;
    std::string text;
    UtcTimestamp created_at;                      // date1
    std::optional<std::string> place_full_name;
    std::string user_screen_name;
    UtcTimestamp user_created_at;                 // date0
    std::int64_t followers = 0;
    std::int64_t followees = 0;
    std::int64_t statuses_count = 0;
    std::int64_t retweet_count = 0;
    bool is_reply = false;

    friend bool operator==(const TweetRecord&, const TweetRecord&) = default;
};

enum class RejectReason { Syntax, Schema, Clock };

std::string_view to_string(RejectReason r);

struct ParsedLine {
    std::optional<TweetRecord> record;
    RejectReason reject = RejectReason::Syntax;

    bool ok() const { return record.has_value(); }
};

// Parses one newline-delimited JSON object. Malformed JSON rejects with
// Syntax; missing or ill-typed required fields reject with Schema;
// user_created_at > created_at rejects with Clock.
ParsedLine parse_record(std::string_view line);

// Emits the normalized one-line JSON form; parse_record(serialize_record(r))
// reproduces r exactly.
std::string serialize_record(const TweetRecord& r);

// Keeps the first occurrence of each tweet_id, preserving input order.
std::vector<TweetRecord> dedup(std::span<const TweetRecord> records);

// Whole calendar days between the UTC dates of account creation and posting.
std::int64_t experience_days(const TweetRecord& r);

// statuses_count / (experience_days + 1); finite for every valid record.
double intensity(const TweetRecord& r);

struct UserFeatures {
    std::int64_t experience_days = 0;
    double intensity = 0.0;
};

UserFeatures user_features(const TweetRecord& r);

}  // namespace geopulse
