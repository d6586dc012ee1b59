#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace geopulse {

// UTC instant with calendar-day helpers. Tweet timestamps never need
// sub-second resolution.
struct UtcTimestamp {
    std::int64_t epoch_seconds = 0;

    // Days since 1970-01-01 UTC, floored (time of day discarded).
    std::int64_t civil_day() const;

    friend bool operator==(const UtcTimestamp&, const UtcTimestamp&) = default;
    friend auto operator<=>(const UtcTimestamp&, const UtcTimestamp&) = default;
};

// Accepts the Twitter REST format ("Wed Mar 10 14:32:11 +0000 2015") and
// ISO-8601 ("2015-03-10T14:32:11Z", offset forms, or a bare date).
std::optional<UtcTimestamp> parse_timestamp(std::string_view s);

std::string format_iso8601(UtcTimestamp t);

// "YYYY-MM-DD" for a civil day count.
std::string format_civil_day(std::int64_t day);

// Inverse of format_civil_day; rejects malformed or invalid dates.
std::optional<std::int64_t> parse_civil_day(std::string_view s);

}  // namespace geopulse
