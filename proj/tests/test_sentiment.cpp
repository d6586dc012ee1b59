#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "geopulse/sentiment.hpp"

using namespace geopulse;

namespace {

Lexicon bundled_lexicon() {
    return Lexicon::load_csv(std::string(GEOPULSE_BUNDLED_DATA_DIR) +
                             "/lexicon.csv");
}

Lexicon tiny_lexicon() {
    Lexicon l;
    l.term_polarity = {{"good", 0.7}, {"bad", -0.7}, {"nice", 0.2}};
    l.negators = {"not", "never"};
    l.intensifiers = {{"very", 1.5}, {"really", 1.5}};
    l.emoticon_polarity = {{":)", 0.5}, {":(", -0.5}};
    return l;
}

TweetRecord make_record(std::string text) {
    TweetRecord r;
    r.tweet_id = "t" + std::to_string(text.size());
    r.text = std::move(text);
    return r;
}

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& content) {
        path = std::filesystem::temp_directory_path() /
               ("geopulse_lex_test_" + std::to_string(std::rand()) + ".csv");
        std::ofstream(path) << content;
    }
    ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("tokenizer lowercases, strips urls and mentions, keeps hashtags") {
    CHECK(tokenize("I LOVE China :)") ==
          std::vector<std::string>{"i", "love", "china", ":)"});
    CHECK(tokenize("http://t.co/x @bob hi") == std::vector<std::string>{"hi"});
    CHECK(tokenize("#SouthChinaSea crisis") ==
          std::vector<std::string>{"southchinasea", "crisis"});
    CHECK(tokenize("https://x.co www.x.co done") ==
          std::vector<std::string>{"done"});
    CHECK(tokenize("don't stop") == std::vector<std::string>{"don't", "stop"});
    CHECK(tokenize("") == std::vector<std::string>{});
}

TEST_CASE("emoticon surfaces stay standalone and verbatim") {
    CHECK(tokenize("great:)day") ==
          std::vector<std::string>{"great", ":)", "day"});
    CHECK(tokenize("so sad :-(") == std::vector<std::string>{"so", "sad", ":-("});
    // Letter-led surfaces need non-letter neighbours.
    CHECK(tokenize("lol xD") == std::vector<std::string>{"lol", "xD"});
    CHECK(tokenize("taxDriver") == std::vector<std::string>{"taxdriver"});
    CHECK(is_emoticon_token(":)"));
    CHECK(is_emoticon_token(":("));
    CHECK(is_emoticon_token("xD"));
    CHECK_FALSE(is_emoticon_token("hi"));
    CHECK_FALSE(is_emoticon_token(":"));
}

TEST_CASE("scorer averages effective polarities") {
    const auto l = tiny_lexicon();
    CHECK(score_polarity("", l) == 0.0);
    CHECK(score_polarity("nothing matches here", l) == 0.0);
    CHECK(score_polarity("good", l) == doctest::Approx(0.7));
    CHECK(score_polarity("not good", l) == doctest::Approx(-0.7));
    CHECK(score_polarity("good and bad", l) == doctest::Approx(0.0));
    CHECK(score_polarity("good weather bad", l) == doctest::Approx(0.0));
}

TEST_CASE("negation looks back exactly two tokens and flips once") {
    const auto l = tiny_lexicon();
    // One filler token between negator and hit: still in window.
    CHECK(score_polarity("not so good", l) == doctest::Approx(-0.7));
    // Two fillers: out of window.
    CHECK(score_polarity("not at all good", l) == doctest::Approx(0.7));
    // Two negators in the window flip only once.
    CHECK(score_polarity("never not good", l) == doctest::Approx(-0.7));
}

TEST_CASE("intensifiers multiply and stack inside the window") {
    const auto l = tiny_lexicon();
    CHECK(score_polarity("very nice", l) == doctest::Approx(0.2 * 1.5));
    CHECK(score_polarity("very very nice", l) ==
          doctest::Approx(0.2 * 1.5 * 1.5));
    // Negator plus intensifier combine.
    CHECK(score_polarity("not very nice", l) == doctest::Approx(-0.3));
    // Intensified beyond the bound clamps.
    CHECK(score_polarity("very good", l) == doctest::Approx(1.0));
    CHECK(score_polarity("not very good", l) == doctest::Approx(-1.0));
}

TEST_CASE("emoticon hits score and take intensifiers like words") {
    const auto l = tiny_lexicon();
    CHECK(score_polarity("hello :)", l) == doctest::Approx(0.5));
    CHECK(score_polarity("really :)", l) == doctest::Approx(0.75));
    CHECK(score_polarity("not :)", l) == doctest::Approx(-0.5));
    // Mean over a word hit and an emoticon hit.
    CHECK(score_polarity("good :(", l) == doctest::Approx((0.7 - 0.5) / 2.0));
}

TEST_CASE("bundled lexicon reproduces pinned scores") {
    const auto l = bundled_lexicon();
    CHECK(l.term_polarity.at("good") == doctest::Approx(0.7));
    CHECK(l.term_polarity.at("bad") == doctest::Approx(-0.7));
    CHECK(l.negators.count("not") == 1);
    CHECK(l.intensifiers.at("very") == doctest::Approx(1.5));
    CHECK(l.emoticon_polarity.at(":)") == doctest::Approx(0.5));
    CHECK(score_polarity("not good", l) == doctest::Approx(-0.7));
    // (0.9 * 1.5 + 0.5 * 1.5) / 2 = 1.05, clamped.
    CHECK(score_polarity("China is really wonderful :)", l) ==
          doctest::Approx(1.0));
    for (const auto& [term, v] : l.term_polarity) {
        CHECK(v >= -1.0);
        CHECK(v <= 1.0);
    }
    for (const auto& [surface, v] : l.emoticon_polarity) {
        CHECK(v >= -1.0);
        CHECK(v <= 1.0);
    }
    for (const auto& [surface, m] : l.intensifiers) CHECK(m > 0.0);
}

TEST_CASE("mirrored lexicons produce mirrored scores") {
    const auto l = bundled_lexicon();
    Lexicon mirror = l;
    for (auto& [term, v] : mirror.term_polarity) v = -v;
    for (auto& [surface, v] : mirror.emoticon_polarity) v = -v;
    const char* texts[] = {
        "not very good day",       "good and bad",
        "terrible smog today :(",  "extremely wonderful really great",
        "never nice :) but bad",   "so so so good",
    };
    for (const char* t : texts) {
        CHECK(score_polarity(t, l) == doctest::Approx(-score_polarity(t, mirror))
                                          .epsilon(1e-12));
        CHECK(score_polarity(t, l) <= 1.0);
        CHECK(score_polarity(t, l) >= -1.0);
    }
}

TEST_CASE("lexicon loading validates rows") {
    CHECK_THROWS(Lexicon::load_csv("/nonexistent/lexicon.csv"));
    CHECK_THROWS(Lexicon::load_csv(TempFile("term,good\n").path.string()));
    CHECK_THROWS(Lexicon::load_csv(TempFile("term,huge,1.5\n").path.string()));
    CHECK_THROWS(
        Lexicon::load_csv(TempFile("intensifier,flat,0\n").path.string()));
    CHECK_THROWS(Lexicon::load_csv(TempFile("verb,run,0.1\n").path.string()));
    const TempFile ok("term,calm,0.1\nnegator,nope,0\n");
    const auto l = Lexicon::load_csv(ok.path.string());
    CHECK(l.term_polarity.at("calm") == doctest::Approx(0.1));
    CHECK(l.negators.count("nope") == 1);
}

TEST_CASE("emoticon validation counts a hand-built confusion matrix") {
    Lexicon l;
    l.term_polarity = {{"awesome", 0.5}};
    const std::vector<TweetRecord> records = {
        make_record("awesome :)"),
        make_record("so awesome :)"),
        make_record("awesome :("),
    };
    const auto m = validate_emoticons(records, l);
    CHECK(m.n == 3);
    CHECK(m.excluded_both == 0);
    CHECK(m.sensitivity == doctest::Approx(1.0));
    CHECK(m.specificity == doctest::Approx(0.0));
    CHECK(m.accuracy == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("neutral scores count correct for both classes") {
    const Lexicon empty;
    const std::vector<TweetRecord> records = {
        make_record("plain :)"),
        make_record("plain :("),
        make_record("words only, skipped"),
    };
    const auto m = validate_emoticons(records, empty);
    CHECK(m.n == 2);
    CHECK(m.accuracy == doctest::Approx(1.0));
    CHECK(m.sensitivity == doctest::Approx(1.0));
    CHECK(m.specificity == doctest::Approx(1.0));
}

TEST_CASE("records with both faces are excluded but counted") {
    const Lexicon empty;
    const std::vector<TweetRecord> records = {
        make_record("mixed :) :("),
        make_record("fine :)"),
    };
    const auto m = validate_emoticons(records, empty);
    CHECK(m.excluded_both == 1);
    CHECK(m.n == 1);
}

TEST_CASE("validation with no labeled records throws") {
    const Lexicon empty;
    const std::vector<TweetRecord> none = {make_record("no faces")};
    CHECK_THROWS_WITH(validate_emoticons(none, empty), "no labeled records");
    const std::vector<TweetRecord> only_both = {make_record(":) :(")};
    CHECK_THROWS_WITH(validate_emoticons(only_both, empty),
                      "no labeled records");
}

TEST_CASE("labels cannot leak into validation scores") {
    Lexicon l = tiny_lexicon();
    const std::vector<TweetRecord> records = {
        make_record("good day :)"),
        make_record("bad day :)"),
        make_record("good day :("),
        make_record("bad day :("),
    };
    const auto before = validate_emoticons(records, l);
    // Cranking emoticon polarities must change nothing: the label tokens are
    // removed before scoring.
    l.emoticon_polarity[":)"] = 1.0;
    l.emoticon_polarity[":("] = 1.0;
    const auto after = validate_emoticons(records, l);
    CHECK(before.accuracy == after.accuracy);
    CHECK(before.sensitivity == after.sensitivity);
    CHECK(before.specificity == after.specificity);
    CHECK(before.n == after.n);
}
