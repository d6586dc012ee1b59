#include "geopulse/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace geopulse {

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
        ++i;
    }
    fields.push_back(std::move(cur));
    return fields;
}

std::vector<std::vector<std::string>> read_csv(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        rows.push_back(split_csv_line(line));
    }
    return rows;
}

std::vector<std::vector<std::string>> read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return read_csv(in);
}

std::string csv_escape(std::string_view field) {
    const bool needs_quote =
        field.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs_quote) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << csv_escape(fields[i]);
    }
    out << '\n';
}

std::string fmt_fixed(double v, int digits) {
    if (std::signbit(v) && v == 0.0) v = 0.0;  // avoid "-0.000000"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string fmt_general(double v) {
    if (std::signbit(v) && v == 0.0) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace geopulse
