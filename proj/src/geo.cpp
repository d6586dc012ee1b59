#include "geopulse/geo.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>

#include "geopulse/csv.hpp"

namespace geopulse {

namespace {

constexpr std::array<std::string_view, 51> kStateIds = {
    "AK", "AL", "AR", "AZ", "CA", "CO", "CT", "DC", "DE", "FL", "GA",
    "HI", "IA", "ID", "IL", "IN", "KS", "KY", "LA", "MA", "MD", "ME",
    "MI", "MN", "MO", "MS", "MT", "NC", "ND", "NE", "NH", "NJ", "NM",
    "NV", "NY", "OH", "OK", "OR", "PA", "RI", "SC", "SD", "TN", "TX",
    "UT", "VA", "VT", "WA", "WI", "WV", "WY"};

constexpr std::array<std::string_view, 31> kProvinceIds = {
    "Anhui",    "Beijing",  "Chongqing", "Fujian",         "Gansu",
    "Guangdong", "Guangxi", "Guizhou",   "Hainan",         "Hebei",
    "Heilongjiang", "Henan", "Hubei",    "Hunan",          "Inner Mongolia",
    "Jiangsu",  "Jiangxi",  "Jilin",     "Liaoning",       "Ningxia",
    "Qinghai",  "Shaanxi",  "Shandong",  "Shanghai",       "Shanxi",
    "Sichuan",  "Tianjin",  "Tibet",     "Xinjiang",       "Yunnan",
    "Zhejiang"};

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return char(std::tolower(c));
    });
    return out;
}

// True iff `phrase` occurs as a contiguous token run in `tokens`.
template <typename Tokens>
bool contains_phrase(const Tokens& tokens,
                     const std::vector<std::string>& phrase) {
    if (phrase.empty() || phrase.size() > tokens.size()) return false;
    for (std::size_t i = 0; i + phrase.size() <= tokens.size(); ++i) {
        bool all = true;
        for (std::size_t j = 0; j < phrase.size(); ++j) {
            if (tokens[i + j] != phrase[j]) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

}  // namespace

std::vector<GazetteerRow> read_gazetteer_csv(const std::string& path) {
    std::vector<GazetteerRow> rows;
    for (auto& fields : read_csv_file(path)) {
        if (fields.size() != 3)
            throw std::runtime_error("bad gazetteer row in " + path +
                                     ": expected id,surface,kind");
        rows.push_back({fields[0], fields[1], fields[2]});
    }
    return rows;
}

std::vector<std::string> tokenize_place(std::string_view place) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : place) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) tokens.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

std::vector<std::string> tokenize_text_words(std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            cur.push_back(char(std::tolower(static_cast<unsigned char>(c))));
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

StateGazetteer StateGazetteer::from_rows(
    const std::vector<GazetteerRow>& rows) {
    StateGazetteer g;
    std::map<StateId, int> abbrev_count, name_count;
    for (const auto& row : rows) {
        if (std::find(kStateIds.begin(), kStateIds.end(), row.id) ==
            kStateIds.end())
            throw std::runtime_error("unknown state id: " + row.id);
        if (row.kind == "abbreviation") {
            g.abbreviations_[row.surface].insert(row.id);
            ++abbrev_count[row.id];
        } else if (row.kind == "full_name") {
            g.full_names_[tokenize_text_words(row.surface)].insert(row.id);
            ++name_count[row.id];
        } else {
            throw std::runtime_error("unknown state pattern kind: " +
                                     row.kind);
        }
    }
    for (auto id : kStateIds) {
        if (abbrev_count[std::string(id)] == 0 ||
            name_count[std::string(id)] == 0)
            throw std::runtime_error("state gazetteer incomplete for " +
                                     std::string(id));
        g.ids_.emplace_back(id);
    }
    return g;
}

StateGazetteer StateGazetteer::load_csv(const std::string& path) {
    return from_rows(read_gazetteer_csv(path));
}

std::set<StateId> StateGazetteer::match(
    std::string_view place_full_name) const {
    std::set<StateId> out;
    const auto tokens = tokenize_place(place_full_name);
    for (const auto& tok : tokens) {
        if (auto it = abbreviations_.find(tok); it != abbreviations_.end())
            out.insert(it->second.begin(), it->second.end());
    }
    std::vector<std::string> lowered;
    lowered.reserve(tokens.size());
    for (const auto& tok : tokens) {
        // Full-name matching normalizes punctuation the same way text
        // tokenization does, so "D.C." becomes ["d","c"].
        for (auto& w : tokenize_text_words(tok)) lowered.push_back(std::move(w));
    }
    for (const auto& [phrase, states] : full_names_) {
        if (contains_phrase(lowered, phrase))
            out.insert(states.begin(), states.end());
    }
    return out;
}

ProvinceGazetteer ProvinceGazetteer::from_rows(
    const std::vector<GazetteerRow>& rows) {
    ProvinceGazetteer g;
    std::map<ProvinceId, int> counts;
    for (const auto& row : rows) {
        if (std::find(kProvinceIds.begin(), kProvinceIds.end(), row.id) ==
            kProvinceIds.end())
            throw std::runtime_error("unknown province id: " + row.id);
        if (row.kind != "name")
            throw std::runtime_error("unknown province pattern kind: " +
                                     row.kind);
        g.variants_[tokenize_text_words(row.surface)].insert(row.id);
        ++counts[row.id];
    }
    for (auto id : kProvinceIds) {
        if (counts[std::string(id)] == 0)
            throw std::runtime_error("province gazetteer incomplete for " +
                                     std::string(id));
        g.ids_.emplace_back(id);
    }
    return g;
}

ProvinceGazetteer ProvinceGazetteer::load_csv(const std::string& path) {
    return from_rows(read_gazetteer_csv(path));
}

std::set<ProvinceId> ProvinceGazetteer::match(std::string_view text) const {
    std::set<ProvinceId> out;
    const auto tokens = tokenize_text_words(text);
    for (const auto& [phrase, provinces] : variants_) {
        if (contains_phrase(tokens, phrase))
            out.insert(provinces.begin(), provinces.end());
    }
    return out;
}

StopList StopList::from_phrases(const std::vector<std::string>& phrases) {
    StopList s;
    for (const auto& p : phrases) {
        auto tokens = tokenize_text_words(p);
        if (!tokens.empty()) s.phrases_.insert(std::move(tokens));
    }
    return s;
}

StopList StopList::load_csv(const std::string& path) {
    std::vector<std::string> phrases;
    for (auto& row : read_csv_file(path)) {
        // id,surface,kind rows; only the surface matters here.
        if (row.size() >= 2) phrases.push_back(row[1]);
        else if (row.size() == 1 && !row[0].empty()) phrases.push_back(row[0]);
    }
    return from_phrases(phrases);
}

bool StopList::matches(std::string_view text) const {
    if (phrases_.empty()) return false;
    const auto tokens = tokenize_text_words(text);
    for (const auto& phrase : phrases_) {
        if (contains_phrase(tokens, phrase)) return true;
    }
    return false;
}

std::set<StateId> attribute_states(std::string_view place_full_name,
                                   const StateGazetteer& g) {
    return g.match(place_full_name);
}

std::set<ProvinceId> attribute_provinces(std::string_view text,
                                         const ProvinceGazetteer& g) {
    return g.match(text);
}

bool passes_stoplist(std::string_view text, const StopList& s) {
    return !s.matches(text);
}

}  // namespace geopulse
