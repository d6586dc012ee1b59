#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "geopulse/geo.hpp"

namespace geopulse {

// A tweet after attribution: states from its place string, provinces from
// its text, polarity, ethnicity flag, and the per-author features. Feature
// fields are reals so user-day aggregates can hold group means.
struct AttributedTweet {
    std::string tweet_id;
    std::string user;
    std::int64_t day = 0;  // civil day of created_at
    std::set<StateId> states;
    std::set<ProvinceId> provinces;
    double polarity = 0.0;
    bool chinese = false;
    double followers = 0.0;
    double followees = 0.0;
    double retweet_count = 0.0;
    double experience = 0.0;
    double intensity = 0.0;
    double reply = 0.0;  // 0/1 per tweet, a fraction after aggregation
};

struct StateStats {
    StateId state;
    std::size_t n = 0;
    double friendliness = 0.0;  // mean polarity, F_s
    double variance = 0.0;      // dispersion of polarity, V_s
};

enum class VarianceMode { Population, Sample };

struct CountSummary {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation over states
    std::int64_t min = 0;
    std::int64_t max = 0;
    std::size_t n_states = 0;
};

// One count per state in `universe`; absent states count zero. A tweet
// attributed to k states increments k counts.
std::map<StateId, std::size_t> state_counts(
    std::span<const AttributedTweet> attributed,
    const std::vector<StateId>& universe);

CountSummary summarize_counts(const std::map<StateId, std::size_t>& counts);

// Per-state mean and variance of polarity for states with n >= 1, sorted by
// StateId. Population variance divides by n; Sample by n-1 (0 when n == 1).
std::vector<StateStats> friendliness_variance(
    std::span<const AttributedTweet> attributed,
    VarianceMode mode = VarianceMode::Population);

// Most friendly first; ties broken by StateId.
std::vector<StateId> friendliness_ranking(const std::vector<StateStats>& stats);
// Most homogeneous (smallest variance) first; ties broken by StateId.
std::vector<StateId> homogeneity_ranking(const std::vector<StateStats>& stats);

// Row-normalized distribution of province mentions per state. Only tweets
// with at least one state and one province contribute; each (state,
// province) pair of the cross product adds one before normalization.
struct StateProvinceMatrix {
    std::vector<StateId> rows;       // all 51, sorted
    std::vector<ProvinceId> cols;    // all 31, sorted
    std::vector<double> values;      // rows.size() * cols.size(), row-major
    std::vector<std::size_t> row_counts;  // contributing tweets per row
    std::size_t contributing_tweets = 0;

    double at(std::size_t r, std::size_t c) const {
        return values[r * cols.size() + c];
    }
};

StateProvinceMatrix build_matrix(std::span<const AttributedTweet> attributed,
                                 const std::vector<StateId>& states,
                                 const std::vector<ProvinceId>& provinces);

// Largest-share province of a row; ties side with Beijing when Beijing is
// among the tied, otherwise break by ProvinceId.
ProvinceId top_province(const StateProvinceMatrix& m, const StateId& state);

struct DailyPoint {
    std::int64_t day = 0;
    double mean_polarity = 0.0;
    std::size_t n = 0;
};

// One row per calendar date present, ascending, mean over all attributed
// tweets that day.
std::vector<DailyPoint> daily_series(
    std::span<const AttributedTweet> attributed);

struct CorrelationReport {
    double r = 0.0;
    double beta = 0.0;
    double beta_se = 0.0;
    std::size_t n = 0;
};

// Pearson correlation and simple OLS of log tweet counts on an external
// index. Zero counts transform as log(count+1). Throws "key mismatch" when
// the two associations cover different states.
CorrelationReport correlate_external(
    const std::map<StateId, std::size_t>& counts,
    const std::map<StateId, double>& external);

}  // namespace geopulse
