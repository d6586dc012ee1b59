#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "geopulse/corpus.hpp"

namespace geopulse {

// Term/negator/intensifier/emoticon tables driving the polarity scorer.
// All polarities lie in [-1,1]; all multipliers are > 0.
struct Lexicon {
    std::unordered_map<std::string, double> term_polarity;
    std::unordered_set<std::string> negators;
    std::unordered_map<std::string, double> intensifiers;
    std::unordered_map<std::string, double> emoticon_polarity;

    static Lexicon load_csv(const std::string& path);
};

// Lowercased word tokens. Emoticons from the built-in surface table stay
// standalone and verbatim; URLs and @mentions are dropped; hashtags keep the
// tag with '#' stripped.
std::vector<std::string> tokenize(std::string_view text);

// Whether a token is one of the built-in emoticon surfaces.
bool is_emoticon_token(std::string_view token);

// Mean of effective polarities over all lexicon hits, clamped to [-1,1];
// 0.0 with no hits. A hit's base polarity is multiplied by intensifiers and
// sign-flipped once by a negator in the preceding 2-token window.
double score_polarity(std::string_view text, const Lexicon& l);
double score_tokens(std::span<const std::string> tokens, const Lexicon& l);

struct ValidationMetrics {
    std::size_t n = 0;
    double accuracy = 0.0;
    double sensitivity = 0.0;
    double specificity = 0.0;
    std::size_t excluded_both = 0;  // records containing ":)" and ":("
};

// Emoticon pseudo-label test: ":)" records count correct at polarity >= 0,
// ":(" records at polarity <= 0 (neutral is correct for both classes).
// Scoring runs with emoticon tokens removed so labels cannot leak.
// Throws "no labeled records" when no record carries exactly one label.
ValidationMetrics validate_emoticons(std::span<const TweetRecord> records,
                                     const Lexicon& l);

}  // namespace geopulse
