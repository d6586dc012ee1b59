#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace geopulse {

using StateId = std::string;     // two-letter code, DC included
using ProvinceId = std::string;  // canonical English name

enum class PatternKind { Abbreviation, FullName };

struct GazetteerRow {
    std::string id;
    std::string surface;
    std::string kind;
};

std::vector<GazetteerRow> read_gazetteer_csv(const std::string& path);

// Place strings split on commas and whitespace only; "D.C." stays one token.
std::vector<std::string> tokenize_place(std::string_view place);

// Free text split into lowercased alphanumeric runs.
std::vector<std::string> tokenize_text_words(std::string_view text);

// Maps each of the 51 states (DC included) to its match patterns.
// Abbreviations match case-sensitively as whole tokens; full names match
// case-insensitively as whole phrases on token boundaries.
class StateGazetteer {
  public:
    static StateGazetteer from_rows(const std::vector<GazetteerRow>& rows);
    static StateGazetteer load_csv(const std::string& path);

    const std::vector<StateId>& state_ids() const { return ids_; }

    std::set<StateId> match(std::string_view place_full_name) const;

  private:
    std::vector<StateId> ids_;  // sorted, exactly 51
    std::map<std::string, std::set<StateId>> abbreviations_;  // case-sensitive
    // lowercased phrase tokens -> states
    std::map<std::vector<std::string>, std::set<StateId>> full_names_;
};

// The 31 Chinese provinces with pinyin and common English name variants,
// matched case-insensitively on token boundaries in tweet text.
class ProvinceGazetteer {
  public:
    static ProvinceGazetteer from_rows(const std::vector<GazetteerRow>& rows);
    static ProvinceGazetteer load_csv(const std::string& path);

    const std::vector<ProvinceId>& province_ids() const { return ids_; }

    std::set<ProvinceId> match(std::string_view text) const;

  private:
    std::vector<ProvinceId> ids_;  // sorted, exactly 31
    std::map<std::vector<std::string>, std::set<ProvinceId>> variants_;
};

// Phrases that disqualify a tweet from processing entirely.
class StopList {
  public:
    StopList() = default;
    static StopList from_phrases(const std::vector<std::string>& phrases);
    static StopList load_csv(const std::string& path);

    bool empty() const { return phrases_.empty(); }
    std::size_t size() const { return phrases_.size(); }

    // True iff some phrase occurs in the text (case-insensitive,
    // token-boundary).
    bool matches(std::string_view text) const;

  private:
    std::set<std::vector<std::string>> phrases_;
};

std::set<StateId> attribute_states(std::string_view place_full_name,
                                   const StateGazetteer& g);
std::set<ProvinceId> attribute_provinces(std::string_view text,
                                         const ProvinceGazetteer& g);
bool passes_stoplist(std::string_view text, const StopList& s);

}  // namespace geopulse
