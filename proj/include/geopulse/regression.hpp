#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geopulse/analytics.hpp"

namespace geopulse {

enum class Subset { All, ChineseOnly, NonChinese };
enum class Aggregation { PerTweet, PerUserDay };
enum class MultiStateMode { Expand, FirstOnly };

// One regression specification: which regressors, fixed-effect families,
// subset, and aggregation to use. The chinese regressor is dropped
// automatically when the subset makes it constant.
struct RegressionSpec {
    bool state_effects = false;
    bool date_effects = false;
    Subset subset = Subset::All;
    Aggregation aggregation = Aggregation::PerTweet;
    MultiStateMode multi_state = MultiStateMode::Expand;
    // Dropped reference level per dummy family; default is the
    // lexicographically first observed level.
    std::optional<std::string> state_reference;
    std::optional<std::string> date_reference;
};

struct DesignMatrix {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<double> x;  // row-major n*k, intercept first
    std::vector<double> y;
    std::vector<std::string> labels;  // size k
    std::map<std::string, std::string> reference_levels;
    std::vector<std::string> warnings;

    double at(std::size_t i, std::size_t j) const { return x[i * k + j]; }
};

struct RegressionResult {
    std::vector<std::string> labels;
    std::vector<double> coefficients;
    std::vector<double> standard_errors;
    std::vector<double> t_statistics;
    std::size_t n = 0;
    std::size_t k = 0;
    double rss = 0.0;
    double r_squared = 0.0;
    double adj_r_squared = 0.0;
    std::vector<double> residuals;

    std::optional<std::size_t> index_of(const std::string& label) const;
};

struct FTestResult {
    double f = 0.0;
    std::size_t df1 = 0;
    std::size_t df2 = 0;
    double p_value = 1.0;
};

// Collapses tweets to one synthetic record per (user, UTC date): polarity
// and the feature columns become group means, reply the group fraction,
// state/province sets the group unions. First-occurrence group order.
std::vector<AttributedTweet> aggregate_user_day(
    std::span<const AttributedTweet> records);

// Builds intercept + continuous + binary columns plus requested dummy
// families. Multi-state records expand to one row per state (or keep the
// first state only). Constant columns are pruned with a warning; a dummy
// family with fewer than two observed levels is dropped with a warning.
// Throws "underdetermined" when n <= k afterwards.
DesignMatrix build_design(std::span<const AttributedTweet> records,
                          const RegressionSpec& spec);

// Least squares via Householder QR; classical homoskedastic standard
// errors. Throws "singular design" naming the offending columns.
RegressionResult ols_fit(const DesignMatrix& d);

// F = ((RSS_r - RSS_f)/q) / (RSS_f/(n - k_f)). Throws "nesting violated"
// when RSS_r < RSS_f beyond 1e-10.
FTestResult joint_f_test(const RegressionResult& full,
                         const RegressionResult& restricted);

// Upper-tail F and two-sided t probabilities.
double f_p_value(double f, std::size_t df1, std::size_t df2);
double t_p_value(double t, std::size_t df);

// I_x(a, b), accurate to ~1e-14 via the continued-fraction expansion.
double regularized_incomplete_beta(double a, double b, double x);

// "***" p<0.001, "**" p<0.01, "*" p<0.05, else "".
std::string significance_stars(double p);

struct Table4Column {
    int index = 0;            // 1..7
    std::string name;
    RegressionSpec spec;
    std::optional<RegressionResult> result;
    std::string failure;      // set when the column was skipped
};

// The seven standard column specifications: baseline, state effects, date
// effects, both, both on user-day aggregates, both on the non-Chinese
// subset, both on the Chinese subset. Column failures are isolated.
std::vector<Table4Column> run_table4(std::span<const AttributedTweet> records,
                                     MultiStateMode multi_state);

}  // namespace geopulse
