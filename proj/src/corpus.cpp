#include "geopulse/corpus.hpp"

#include <unordered_set>

#include <json.hpp>

namespace geopulse {

namespace {

using nlohmann::json;

const json* find_path(const json& root, std::string_view dotted) {
    const json* cur = &root;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = dotted.find('.', start);
        const std::string key(dotted.substr(
            start, dot == std::string_view::npos ? dotted.size() - start
                                                 : dot - start));
        if (!cur->is_object()) return nullptr;
        const auto it = cur->find(key);
        if (it == cur->end() || it->is_null()) return nullptr;
        cur = &*it;
        if (dot == std::string_view::npos) return cur;
        start = dot + 1;
    }
}

bool get_string(const json& root, std::string_view path, std::string& out) {
    const json* v = find_path(root, path);
    if (!v || !v->is_string()) return false;
    out = v->get<std::string>();
    return true;
}

bool get_count(const json& root, std::string_view path, std::int64_t& out) {
    const json* v = find_path(root, path);
    if (!v || !v->is_number_integer()) return false;
    out = v->get<std::int64_t>();
    return out >= 0;
}

bool get_time(const json& root, std::string_view path, UtcTimestamp& out) {
    std::string raw;
    if (!get_string(root, path, raw)) return false;
    const auto ts = parse_timestamp(raw);
    if (!ts) return false;
    out = *ts;
    return true;
}

}  // namespace

std::string_view to_string(RejectReason r) {
    switch (r) {
        case RejectReason::Syntax: return "syntax";
        case RejectReason::Schema: return "schema";
        case RejectReason::Clock: return "clock";
    }
    return "unknown";
}

ParsedLine parse_record(std::string_view line) {
    json root = json::parse(line, nullptr, false);
    if (root.is_discarded() || !root.is_object())
        return {std::nullopt, RejectReason::Syntax};

    TweetRecord r;
    if (!get_string(root, "id_str", r.tweet_id) || r.tweet_id.empty() ||
        !get_string(root, "text", r.text) ||
        !get_time(root, "created_at", r.created_at) ||
        !get_string(root, "user.screen_name", r.user_screen_name) ||
        !get_time(root, "user.created_at", r.user_created_at) ||
        !get_count(root, "user.followers_count", r.followers) ||
        !get_count(root, "user.friends_count", r.followees) ||
        !get_count(root, "user.statuses_count", r.statuses_count) ||
        !get_count(root, "retweet_count", r.retweet_count))
        return {std::nullopt, RejectReason::Schema};

    if (const json* place = find_path(root, "place.full_name");
        place && place->is_string())
        r.place_full_name = place->get<std::string>();
    r.is_reply = find_path(root, "in_reply_to_status_id") != nullptr;

    if (r.user_created_at > r.created_at)
        return {std::nullopt, RejectReason::Clock};
    return {std::move(r), RejectReason::Syntax};
}

std::string serialize_record(const TweetRecord& r) {
    json user{{"screen_name", r.user_screen_name},
              {"created_at", format_iso8601(r.user_created_at)},
              {"followers_count", r.followers},
              {"friends_count", r.followees},
              {"statuses_count", r.statuses_count}};
    json root{{"id_str", r.tweet_id},
              {"text", r.text},
              {"created_at", format_iso8601(r.created_at)},
              {"user", std::move(user)},
              {"retweet_count", r.retweet_count}};
    if (r.place_full_name)
        root["place"] = json{{"full_name", *r.place_full_name}};
    if (r.is_reply) root["in_reply_to_status_id"] = 0;
    return root.dump();
}

std::vector<TweetRecord> dedup(std::span<const TweetRecord> records) {
    std::vector<TweetRecord> out;
    out.reserve(records.size());
    std::unordered_set<std::string_view> seen;
    for (const auto& r : records) {
        if (seen.insert(r.tweet_id).second) out.push_back(r);
    }
    return out;
}

std::int64_t experience_days(const TweetRecord& r) {
    return r.created_at.civil_day() - r.user_created_at.civil_day();
}

double intensity(const TweetRecord& r) {
    return double(r.statuses_count) / double(experience_days(r) + 1);
}

UserFeatures user_features(const TweetRecord& r) {
    return {experience_days(r), intensity(r)};
}

}  // namespace geopulse
