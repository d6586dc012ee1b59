#include "geopulse/ethnic.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>

namespace geopulse {

namespace {

bool is_letter(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool is_up(char c) { return std::isupper(static_cast<unsigned char>(c)); }
bool is_low(char c) { return std::islower(static_cast<unsigned char>(c)); }

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return char(std::tolower(c));
    });
    return out;
}

bool segment_matches(const std::string& segment, const SurnameList& l) {
    if (l.contains(segment)) return true;
    // A clean two-way split into listed surnames also counts: "wangli".
    for (std::size_t cut = 1; cut + 1 <= segment.size(); ++cut) {
        const std::string_view head(segment.data(), cut);
        const std::string_view tail(segment.data() + cut,
                                    segment.size() - cut);
        if (l.contains(head) && l.contains(tail)) return true;
    }
    return false;
}

}  // namespace

SurnameList SurnameList::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open surname list: " + path);
    SurnameList list;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::size_t last = line.find_last_not_of(" \t");
        list.names.insert(lower(line.substr(first, last - first + 1)));
    }
    if (list.names.empty())
        throw std::runtime_error("surname list is empty: " + path);
    return list;
}

std::vector<std::string> name_segments(std::string_view screen_name) {
    std::vector<std::string> segments;
    std::string cur;
    for (std::size_t i = 0; i < screen_name.size(); ++i) {
        const char c = screen_name[i];
        if (!is_letter(c)) {
            if (!cur.empty()) segments.push_back(std::move(cur));
            cur.clear();
            continue;
        }
        const bool camel_boundary =
            !cur.empty() && is_up(c) && is_low(screen_name[i - 1]);
        // "HTTPServer" splits before the last capital of an all-caps run.
        const bool acronym_boundary =
            !cur.empty() && is_up(screen_name[i - 1]) && is_up(c) &&
            i + 1 < screen_name.size() && is_low(screen_name[i + 1]);
        if (camel_boundary || acronym_boundary) {
            segments.push_back(std::move(cur));
            cur.clear();
        }
        cur.push_back(char(std::tolower(static_cast<unsigned char>(c))));
    }
    if (!cur.empty()) segments.push_back(std::move(cur));
    return segments;
}

bool is_chinese(std::string_view screen_name, const SurnameList& l,
                SurnameMatchMode mode) {
    if (mode == SurnameMatchMode::Substring) {
        const std::string lowered = lower(screen_name);
        for (const auto& name : l.names) {
            if (lowered.find(name) != std::string::npos) return true;
        }
        return false;
    }
    for (const auto& segment : name_segments(screen_name)) {
        if (segment_matches(segment, l)) return true;
    }
    return false;
}

}  // namespace geopulse
