#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace geopulse {

// Splits one CSV line. Fields containing commas, quotes, or newlines must be
// double-quoted; embedded quotes are doubled.
std::vector<std::string> split_csv_line(std::string_view line);

// Reads all rows from a stream, skipping blank lines and lines whose first
// non-space character is '#'.
std::vector<std::vector<std::string>> read_csv(std::istream& in);
std::vector<std::vector<std::string>> read_csv_file(const std::string& path);

std::string csv_escape(std::string_view field);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

// Fixed-notation / general-notation doubles with deterministic text form.
std::string fmt_fixed(double v, int digits);
std::string fmt_general(double v);

}  // namespace geopulse
