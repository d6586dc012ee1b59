#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace geopulse {

// Lowercase pinyin surnames; the bundled list has the 85 distinct names.
struct SurnameList {
    std::unordered_set<std::string> names;

    static SurnameList load(const std::string& path);

    bool contains(std::string_view name) const {
        return names.count(std::string(name)) > 0;
    }
};

enum class SurnameMatchMode {
    Segment,    // surnames must align with name-segment boundaries
    Substring,  // plain lowercased substring containment
};

// Maximal letter runs of the screen name, lowercased, split on digits,
// underscores, other separators, and case transitions:
// "YuWang176" -> {"yu", "wang"}.
std::vector<std::string> name_segments(std::string_view screen_name);

// True iff some surname matches a segment exactly, or is a segment prefix or
// suffix whose remainder is itself a listed surname ("wangli" -> wang + li).
// Substring mode reproduces plain containment instead.
bool is_chinese(std::string_view screen_name, const SurnameList& l,
                SurnameMatchMode mode = SurnameMatchMode::Segment);

}  // namespace geopulse
