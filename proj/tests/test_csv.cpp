#include <doctest.h>

#include <sstream>

#include "geopulse/csv.hpp"

using namespace geopulse;

TEST_CASE("plain fields split on commas") {
    const auto f = split_csv_line("a,b,c");
    REQUIRE(f.size() == 3);
    CHECK(f[0] == "a");
    CHECK(f[1] == "b");
    CHECK(f[2] == "c");
}

TEST_CASE("quoted fields keep commas and doubled quotes") {
    const auto f = split_csv_line("\"Kansas City, MO\",\"say \"\"hi\"\"\",x");
    REQUIRE(f.size() == 3);
    CHECK(f[0] == "Kansas City, MO");
    CHECK(f[1] == "say \"hi\"");
    CHECK(f[2] == "x");
}

TEST_CASE("empty fields survive") {
    const auto f = split_csv_line(",a,");
    REQUIRE(f.size() == 3);
    CHECK(f[0] == "");
    CHECK(f[1] == "a");
    CHECK(f[2] == "");
}

TEST_CASE("reader skips comments and blank lines") {
    std::istringstream in("# comment\n\na,b\n  # indented comment\nc,d\n");
    const auto rows = read_csv(in);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][0] == "a");
    CHECK(rows[1][1] == "d");
}

TEST_CASE("reader strips carriage returns") {
    std::istringstream in("a,b\r\nc,d\r\n");
    const auto rows = read_csv(in);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][1] == "b");
    CHECK(rows[1][1] == "d");
}

TEST_CASE("escape quotes only when needed") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("escaped rows round-trip through the splitter") {
    std::ostringstream out;
    write_csv_row(out, {"Kansas City, MO", "say \"hi\"", "plain"});
    std::string line = out.str();
    REQUIRE(!line.empty());
    line.pop_back();  // trailing newline
    const auto f = split_csv_line(line);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == "Kansas City, MO");
    CHECK(f[1] == "say \"hi\"");
    CHECK(f[2] == "plain");
}

TEST_CASE("fixed formatting is stable and normalizes negative zero") {
    CHECK(fmt_fixed(1.0, 6) == "1.000000");
    CHECK(fmt_fixed(-0.0, 6) == "0.000000");
    CHECK(fmt_fixed(0.123456789, 6) == "0.123457");
    CHECK(fmt_fixed(-2.5, 2) == "-2.50");
}

TEST_CASE("general formatting is stable") {
    CHECK(fmt_general(0.0) == "0");
    CHECK(fmt_general(-0.0) == "0");
    CHECK(fmt_general(1.0) == "1");
    CHECK(fmt_general(0.5) == "0.5");
    CHECK(fmt_general(1e-7) == "1e-07");
}
