#include "geopulse/sentiment.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>

#include "geopulse/csv.hpp"

namespace geopulse {

namespace {

// Longest surfaces first so ":-(" wins over ":-".
constexpr std::array<std::string_view, 22> kEmoticons = {
    ":'-(", ":'-)", ":-))", ":'(", ":')", ":-)", ":-(", ":-D", ":-P",
    ":-/",  ";-)",  "<33",  ":)",  ":(", ":D",  ":P",  ":/",  ":|",
    ";)",   "<3",   "xD",   "XD"};

bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '\'';
}

bool is_letterish(char c) {
    return std::isalnum(static_cast<unsigned char>(c));
}

// Matches an emoticon at position i of the chunk; surfaces that start with a
// letter (xD) additionally require non-letter neighbours.
std::size_t emoticon_at(std::string_view chunk, std::size_t i) {
    for (auto surf : kEmoticons) {
        if (chunk.size() - i < surf.size()) continue;
        if (chunk.substr(i, surf.size()) != surf) continue;
        if (is_letterish(surf.front())) {
            const bool left_ok = i == 0 || !is_letterish(chunk[i - 1]);
            const std::size_t end = i + surf.size();
            const bool right_ok =
                end == chunk.size() || !is_letterish(chunk[end]);
            if (!left_ok || !right_ok) continue;
        }
        return surf.size();
    }
    return 0;
}

void push_word(std::string& word, std::vector<std::string>& out) {
    while (!word.empty() && word.front() == '\'') word.erase(word.begin());
    while (!word.empty() && word.back() == '\'') word.pop_back();
    if (!word.empty()) out.push_back(word);
    word.clear();
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.substr(0, prefix.size()) == prefix;
}

}  // namespace

Lexicon Lexicon::load_csv(const std::string& path) {
    Lexicon lex;
    for (const auto& row : read_csv_file(path)) {
        if (row.size() != 3)
            throw std::runtime_error("bad lexicon row in " + path +
                                     ": expected kind,surface,value");
        const std::string& kind = row[0];
        const std::string& surface = row[1];
        if (kind == "negator") {
            lex.negators.insert(surface);
            continue;
        }
        const double value = std::stod(row[2]);
        if (kind == "term" || kind == "emoticon") {
            if (value < -1.0 || value > 1.0)
                throw std::runtime_error("lexicon polarity out of [-1,1]: " +
                                         surface);
            (kind == "term" ? lex.term_polarity
                            : lex.emoticon_polarity)[surface] = value;
        } else if (kind == "intensifier") {
            if (value <= 0.0)
                throw std::runtime_error(
                    "intensifier multiplier must be positive: " + surface);
            lex.intensifiers[surface] = value;
        } else {
            throw std::runtime_error("unknown lexicon kind: " + kind);
        }
    }
    return lex;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() &&
               std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        std::size_t j = i;
        while (j < text.size() &&
               !std::isspace(static_cast<unsigned char>(text[j])))
            ++j;
        if (j == i) break;
        std::string_view chunk = text.substr(i, j - i);
        i = j;

        if (starts_with(chunk, "http://") || starts_with(chunk, "https://") ||
            starts_with(chunk, "www."))
            continue;
        if (chunk.front() == '@' && chunk.size() > 1) continue;
        if (chunk.front() == '#') chunk.remove_prefix(1);

        std::string word;
        for (std::size_t p = 0; p < chunk.size();) {
            if (const std::size_t len = emoticon_at(chunk, p); len > 0) {
                push_word(word, tokens);
                tokens.emplace_back(chunk.substr(p, len));
                p += len;
            } else if (word_char(chunk[p])) {
                word.push_back(
                    char(std::tolower(static_cast<unsigned char>(chunk[p]))));
                ++p;
            } else {
                push_word(word, tokens);
                ++p;
            }
        }
        push_word(word, tokens);
    }
    return tokens;
}

bool is_emoticon_token(std::string_view token) {
    return std::find(kEmoticons.begin(), kEmoticons.end(), token) !=
           kEmoticons.end();
}

double score_tokens(std::span<const std::string> tokens, const Lexicon& l) {
    double sum = 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        double base = 0.0;
        if (auto it = l.term_polarity.find(tokens[i]);
            it != l.term_polarity.end()) {
            base = it->second;
        } else if (auto em = l.emoticon_polarity.find(tokens[i]);
                   em != l.emoticon_polarity.end()) {
            base = em->second;
        } else {
            continue;
        }
        double mult = 1.0;
        bool negated = false;
        for (std::size_t back = 1; back <= 2 && back <= i; ++back) {
            const std::string& prev = tokens[i - back];
            if (auto it = l.intensifiers.find(prev); it != l.intensifiers.end())
                mult *= it->second;
            if (l.negators.count(prev)) negated = true;
        }
        sum += base * mult * (negated ? -1.0 : 1.0);
        ++hits;
    }
    if (hits == 0) return 0.0;
    return std::clamp(sum / double(hits), -1.0, 1.0);
}

double score_polarity(std::string_view text, const Lexicon& l) {
    const auto tokens = tokenize(text);
    return score_tokens(tokens, l);
}

ValidationMetrics validate_emoticons(std::span<const TweetRecord> records,
                                     const Lexicon& l) {
    ValidationMetrics m;
    std::size_t positives = 0, negatives = 0;
    std::size_t correct_pos = 0, correct_neg = 0;
    for (const auto& r : records) {
        const bool has_pos = r.text.find(":)") != std::string::npos;
        const bool has_neg = r.text.find(":(") != std::string::npos;
        if (has_pos && has_neg) {
            ++m.excluded_both;
            continue;
        }
        if (!has_pos && !has_neg) continue;
        std::vector<std::string> tokens = tokenize(r.text);
        std::erase_if(tokens, [](const std::string& t) {
            return is_emoticon_token(t);
        });
        const double score = score_tokens(tokens, l);
        if (has_pos) {
            ++positives;
            if (score >= 0.0) ++correct_pos;
        } else {
            ++negatives;
            if (score <= 0.0) ++correct_neg;
        }
    }
    m.n = positives + negatives;
    if (m.n == 0) throw std::runtime_error("no labeled records");
    m.accuracy = double(correct_pos + correct_neg) / double(m.n);
    m.sensitivity =
        positives == 0 ? 1.0 : double(correct_pos) / double(positives);
    m.specificity =
        negatives == 0 ? 1.0 : double(correct_neg) / double(negatives);
    return m;
}

}  // namespace geopulse
