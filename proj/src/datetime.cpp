#include "geopulse/datetime.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <vector>

namespace geopulse {

namespace {

constexpr std::array<std::string_view, 12> kMonths = {
    "Jan", "Feb", "Mar", "Apr", "May", "Jun",
    "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

std::optional<std::int64_t> days_from_ymd(int year, int month, int day) {
    using namespace std::chrono;
    const year_month_day ymd{std::chrono::year{year}, std::chrono::month{unsigned(month)},
                             std::chrono::day{unsigned(day)}};
    if (!ymd.ok()) return std::nullopt;
    return sys_days{ymd}.time_since_epoch().count();
}

bool parse_int(std::string_view s, int& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
}

// "+0000", "-0530", "+05:30" -> seconds east of UTC.
std::optional<int> parse_offset(std::string_view s) {
    if (s == "Z" || s == "z") return 0;
    if (s.size() < 3 || (s[0] != '+' && s[0] != '-')) return std::nullopt;
    const int sign = s[0] == '+' ? 1 : -1;
    std::string_view rest = s.substr(1);
    std::string digits;
    for (char c : rest) {
        if (c == ':') continue;
        if (c < '0' || c > '9') return std::nullopt;
        digits.push_back(c);
    }
    if (digits.size() != 4) return std::nullopt;
    const int hh = (digits[0] - '0') * 10 + (digits[1] - '0');
    const int mm = (digits[2] - '0') * 10 + (digits[3] - '0');
    if (hh > 23 || mm > 59) return std::nullopt;
    return sign * (hh * 3600 + mm * 60);
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && s[i] == ' ') ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

// "Wed Mar 10 14:32:11 +0000 2015"
std::optional<UtcTimestamp> parse_twitter(std::string_view s) {
    const auto parts = split_ws(s);
    if (parts.size() != 6) return std::nullopt;
    int month = 0;
    for (std::size_t m = 0; m < kMonths.size(); ++m) {
        if (parts[1] == kMonths[m]) {
            month = int(m) + 1;
            break;
        }
    }
    if (month == 0) return std::nullopt;
    int day = 0, year = 0;
    if (!parse_int(parts[2], day) || !parse_int(parts[5], year)) return std::nullopt;
    std::string_view hms = parts[3];
    if (hms.size() != 8 || hms[2] != ':' || hms[5] != ':') return std::nullopt;
    int hh = 0, mi = 0, ss = 0;
    if (!parse_int(hms.substr(0, 2), hh) || !parse_int(hms.substr(3, 2), mi) ||
        !parse_int(hms.substr(6, 2), ss))
        return std::nullopt;
    if (hh > 23 || mi > 59 || ss > 60) return std::nullopt;
    const auto offset = parse_offset(parts[4]);
    if (!offset) return std::nullopt;
    const auto days = days_from_ymd(year, month, day);
    if (!days) return std::nullopt;
    return UtcTimestamp{*days * 86400 + hh * 3600 + mi * 60 + ss - *offset};
}

// "2015-03-10T14:32:11Z", "2015-03-10 14:32:11+05:30", "2015-03-10"
std::optional<UtcTimestamp> parse_iso(std::string_view s) {
    if (s.size() < 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    int year = 0, month = 0, day = 0;
    if (!parse_int(s.substr(0, 4), year) || !parse_int(s.substr(5, 2), month) ||
        !parse_int(s.substr(8, 2), day))
        return std::nullopt;
    const auto days = days_from_ymd(year, month, day);
    if (!days) return std::nullopt;
    if (s.size() == 10) return UtcTimestamp{*days * 86400};
    if (s[10] != 'T' && s[10] != ' ') return std::nullopt;
    std::string_view rest = s.substr(11);
    if (rest.size() < 8 || rest[2] != ':' || rest[5] != ':') return std::nullopt;
    int hh = 0, mi = 0, ss = 0;
    if (!parse_int(rest.substr(0, 2), hh) || !parse_int(rest.substr(3, 2), mi) ||
        !parse_int(rest.substr(6, 2), ss))
        return std::nullopt;
    if (hh > 23 || mi > 59 || ss > 60) return std::nullopt;
    int offset = 0;
    if (rest.size() > 8) {
        const auto off = parse_offset(rest.substr(8));
        if (!off) return std::nullopt;
        offset = *off;
    }
    return UtcTimestamp{*days * 86400 + hh * 3600 + mi * 60 + ss - offset};
}

}  // namespace

std::int64_t UtcTimestamp::civil_day() const {
    std::int64_t d = epoch_seconds / 86400;
    if (epoch_seconds % 86400 < 0) --d;
    return d;
}

std::optional<UtcTimestamp> parse_timestamp(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s.empty()) return std::nullopt;
    if (s.size() >= 10 && s[4] == '-') return parse_iso(s);
    return parse_twitter(s);
}

std::string format_iso8601(UtcTimestamp t) {
    using namespace std::chrono;
    const std::int64_t day = t.civil_day();
    std::int64_t sod = t.epoch_seconds - day * 86400;
    const year_month_day ymd{sys_days{days{day}}};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ",
                  int(ymd.year()), unsigned(ymd.month()), unsigned(ymd.day()),
                  int(sod / 3600), int((sod / 60) % 60), int(sod % 60));
    return buf;
}

std::string format_civil_day(std::int64_t day) {
    using namespace std::chrono;
    const year_month_day ymd{sys_days{days{day}}};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()));
    return buf;
}

std::optional<std::int64_t> parse_civil_day(std::string_view s) {
    const auto ts = parse_timestamp(s);
    if (!ts || s.size() != 10) return std::nullopt;
    return ts->civil_day();
}

}  // namespace geopulse
