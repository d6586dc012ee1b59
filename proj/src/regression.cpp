#include "geopulse/regression.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "geopulse/datetime.hpp"

namespace geopulse {

namespace {

struct ColumnSpec {
    std::string label;
    double (*get)(const AttributedTweet&);
};

const ColumnSpec kContinuous[] = {
    {"followers", [](const AttributedTweet& t) { return t.followers; }},
    {"followees", [](const AttributedTweet& t) { return t.followees; }},
    {"retweet", [](const AttributedTweet& t) { return t.retweet_count; }},
    {"reply", [](const AttributedTweet& t) { return t.reply; }},
    {"experience", [](const AttributedTweet& t) { return t.experience; }},
    {"intensity", [](const AttributedTweet& t) { return t.intensity; }},
};

// One design row: a record pinned to a single state.
struct Row {
    const AttributedTweet* record;
    const StateId* state;
};

std::vector<Row> expand_rows(std::span<const AttributedTweet> records,
                             const RegressionSpec& spec,
                             std::vector<std::string>& warnings) {
    std::vector<Row> rows;
    std::size_t stateless = 0;
    for (const auto& r : records) {
        if (spec.subset == Subset::ChineseOnly && !r.chinese) continue;
        if (spec.subset == Subset::NonChinese && r.chinese) continue;
        if (r.states.empty()) {
            ++stateless;
            continue;
        }
        if (spec.multi_state == MultiStateMode::Expand) {
            for (const auto& s : r.states) rows.push_back({&r, &s});
        } else {
            rows.push_back({&r, &*r.states.begin()});
        }
    }
    if (stateless > 0)
        warnings.push_back("skipped " + std::to_string(stateless) +
                           " records without a state");
    return rows;
}

// Continued fraction for the incomplete beta (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

std::optional<std::size_t> RegressionResult::index_of(
    const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) return i;
    }
    return std::nullopt;
}

std::vector<AttributedTweet> aggregate_user_day(
    std::span<const AttributedTweet> records) {
    std::map<std::pair<std::string, std::int64_t>, std::size_t> index;
    std::vector<AttributedTweet> groups;
    std::vector<std::size_t> sizes;
    for (const auto& r : records) {
        const auto key = std::make_pair(r.user, r.day);
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(key, groups.size());
            AttributedTweet g = r;
            g.tweet_id = r.user + "@" + format_civil_day(r.day);
            groups.push_back(std::move(g));
            sizes.push_back(1);
            continue;
        }
        AttributedTweet& g = groups[it->second];
        g.polarity += r.polarity;
        g.followers += r.followers;
        g.followees += r.followees;
        g.retweet_count += r.retweet_count;
        g.experience += r.experience;
        g.intensity += r.intensity;
        g.reply += r.reply;
        g.chinese = g.chinese || r.chinese;
        g.states.insert(r.states.begin(), r.states.end());
        g.provinces.insert(r.provinces.begin(), r.provinces.end());
        ++sizes[it->second];
    }
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const double n = double(sizes[i]);
        auto& g = groups[i];
        g.polarity /= n;
        g.followers /= n;
        g.followees /= n;
        g.retweet_count /= n;
        g.experience /= n;
        g.intensity /= n;
        g.reply /= n;
    }
    return groups;
}

DesignMatrix build_design(std::span<const AttributedTweet> records,
                          const RegressionSpec& spec) {
    DesignMatrix d;
    const auto rows = expand_rows(records, spec, d.warnings);
    d.n = rows.size();
    if (d.n == 0) throw std::runtime_error("underdetermined: no rows");

    struct PlannedColumn {
        std::string label;
        double (*get)(const AttributedTweet&) = nullptr;
        int family = 0;  // 0 none, 1 date, 2 state
        std::string level;
    };
    std::vector<PlannedColumn> plan;
    plan.push_back({"intercept"});
    for (const auto& c : kContinuous) plan.push_back({c.label, c.get});
    if (spec.subset == Subset::All)
        plan.push_back({"chinese", [](const AttributedTweet& t) {
                            return t.chinese ? 1.0 : 0.0;
                        }});

    const auto add_family = [&](int family, const char* name,
                                const std::optional<std::string>& reference,
                                auto&& level_of) {
        std::set<std::string> levels;
        for (const auto& row : rows) levels.insert(level_of(row));
        if (levels.size() < 2) {
            d.warnings.push_back(std::string(name) +
                                 " effects dropped: single level");
            return;
        }
        std::string ref = *levels.begin();
        if (reference && levels.count(*reference)) ref = *reference;
        d.reference_levels[name] = ref;
        for (const auto& level : levels) {
            if (level == ref) continue;
            plan.push_back(
                {std::string(name) + ":" + level, nullptr, family, level});
        }
    };
    if (spec.date_effects)
        add_family(1, "date", spec.date_reference, [](const Row& r) {
            return format_civil_day(r.record->day);
        });
    if (spec.state_effects)
        add_family(2, "state", spec.state_reference,
                   [](const Row& r) { return *r.state; });

    const auto cell = [](const PlannedColumn& col, const Row& row) -> double {
        if (col.get) return col.get(*row.record);
        if (col.family == 1)
            return format_civil_day(row.record->day) == col.level ? 1.0 : 0.0;
        if (col.family == 2) return *row.state == col.level ? 1.0 : 0.0;
        return 1.0;  // intercept
    };

    std::vector<PlannedColumn> kept;
    kept.push_back(plan[0]);
    for (std::size_t j = 1; j < plan.size(); ++j) {
        const double first = cell(plan[j], rows[0]);
        bool constant = true;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (cell(plan[j], rows[i]) != first) {
                constant = false;
                break;
            }
        }
        if (constant) {
            d.warnings.push_back("pruned constant column: " + plan[j].label);
        } else {
            kept.push_back(plan[j]);
        }
    }

    d.k = kept.size();
    if (d.n <= d.k)
        throw std::runtime_error("underdetermined: n=" + std::to_string(d.n) +
                                 " k=" + std::to_string(d.k));
    d.labels.reserve(d.k);
    for (const auto& col : kept) d.labels.push_back(col.label);
    d.x.resize(d.n * d.k);
    d.y.resize(d.n);
    for (std::size_t i = 0; i < d.n; ++i) {
        d.y[i] = rows[i].record->polarity;
        for (std::size_t j = 0; j < d.k; ++j)
            d.x[i * d.k + j] = cell(kept[j], rows[i]);
    }
    return d;
}

RegressionResult ols_fit(const DesignMatrix& d) {
    const std::size_t n = d.n, k = d.k;
    if (n == 0 || k == 0 || n <= k)
        throw std::runtime_error("underdetermined: n=" + std::to_string(n) +
                                 " k=" + std::to_string(k));

    // Column-major working copy; reflectors overwrite the subdiagonal.
    std::vector<double> a(n * k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) a[j * n + i] = d.at(i, j);
    std::vector<double> qty = d.y;
    std::vector<double> col_norms(k);
    for (std::size_t j = 0; j < k; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += a[j * n + i] * a[j * n + i];
        col_norms[j] = std::sqrt(s);
    }

    std::vector<double> diag(k, 0.0);
    std::vector<std::string> deficient;
    for (std::size_t j = 0; j < k; ++j) {
        double* colj = &a[j * n];
        double sigma = 0.0;
        for (std::size_t i = j; i < n; ++i) sigma += colj[i] * colj[i];
        sigma = std::sqrt(sigma);
        if (sigma <= 1e-10 * std::max(col_norms[j], 1.0)) {
            deficient.push_back(d.labels[j]);
            diag[j] = 0.0;
            continue;
        }
        const double x0 = colj[j];
        const double alpha = x0 >= 0.0 ? -sigma : sigma;
        const double v0 = x0 - alpha;  // |v0| = |x0| + sigma
        const double tau = -v0 / alpha;
        diag[j] = alpha;
        for (std::size_t i = j + 1; i < n; ++i) colj[i] /= v0;

        // Apply I - tau v v^T (v normalized, v[j] = 1) to the trailing
        // columns and to y.
        const auto reflect = [&](double* w) {
            double dot = w[j];
            for (std::size_t i = j + 1; i < n; ++i) dot += colj[i] * w[i];
            dot *= tau;
            w[j] -= dot;
            for (std::size_t i = j + 1; i < n; ++i) w[i] -= dot * colj[i];
        };
        for (std::size_t c = j + 1; c < k; ++c) reflect(&a[c * n]);
        reflect(qty.data());
    }
    // Rank check on the R diagonal against original column scales.
    for (std::size_t j = 0; j < k; ++j) {
        if (std::fabs(diag[j]) <= 1e-10 * std::max(col_norms[j], 1.0)) {
            if (std::find(deficient.begin(), deficient.end(), d.labels[j]) ==
                deficient.end())
                deficient.push_back(d.labels[j]);
        }
    }
    if (!deficient.empty()) {
        std::string msg = "singular design:";
        for (const auto& l : deficient) msg += " " + l;
        throw std::runtime_error(msg);
    }

    // Back substitution: R beta = (Q^T y)[0..k).
    RegressionResult res;
    res.labels = d.labels;
    res.n = n;
    res.k = k;
    res.coefficients.assign(k, 0.0);
    for (std::size_t jj = k; jj-- > 0;) {
        double v = qty[jj];
        for (std::size_t c = jj + 1; c < k; ++c)
            v -= a[c * n + jj] * res.coefficients[c];
        res.coefficients[jj] = v / diag[jj];
    }

    res.residuals.assign(n, 0.0);
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double fit = 0.0;
        for (std::size_t j = 0; j < k; ++j)
            fit += d.at(i, j) * res.coefficients[j];
        res.residuals[i] = d.y[i] - fit;
        rss += res.residuals[i] * res.residuals[i];
    }
    res.rss = rss;

    // (X^T X)^{-1} = R^{-1} R^{-T}; diagonal entries are squared row norms
    // of R^{-1}.
    std::vector<double> rinv(k * k, 0.0);  // row-major upper triangular
    for (std::size_t c = k; c-- > 0;) {
        // Solve R z = e_c.
        for (std::size_t i = c + 1; i-- > 0;) {
            double v = i == c ? 1.0 : 0.0;
            for (std::size_t m = i + 1; m <= c; ++m)
                v -= a[m * n + i] * rinv[m * k + c];
            // R[i][m] for m > i lives at a[m*n + i]; R[i][i] = diag[i].
            rinv[i * k + c] = v / diag[i];
        }
    }
    const double sigma2 = rss / double(n - k);
    res.standard_errors.assign(k, 0.0);
    res.t_statistics.assign(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        double row_sq = 0.0;
        for (std::size_t c = j; c < k; ++c)
            row_sq += rinv[j * k + c] * rinv[j * k + c];
        res.standard_errors[j] = std::sqrt(sigma2 * row_sq);
        if (res.standard_errors[j] > 0.0)
            res.t_statistics[j] =
                res.coefficients[j] / res.standard_errors[j];
    }

    double ymean = 0.0;
    for (double v : d.y) ymean += v;
    ymean /= double(n);
    double tss = 0.0;
    for (double v : d.y) tss += (v - ymean) * (v - ymean);
    res.r_squared = tss > 0.0 ? 1.0 - rss / tss : 0.0;
    res.adj_r_squared =
        1.0 - (1.0 - res.r_squared) * double(n - 1) / double(n - k);
    return res;
}

FTestResult joint_f_test(const RegressionResult& full,
                         const RegressionResult& restricted) {
    if (full.n != restricted.n)
        throw std::runtime_error("nesting violated: row counts differ");
    if (restricted.k > full.k)
        throw std::runtime_error("nesting violated: restricted model larger");
    if (restricted.rss < full.rss - 1e-10)
        throw std::runtime_error("nesting violated: restricted RSS below full");
    FTestResult t;
    t.df2 = full.n - full.k;
    if (restricted.k == full.k) {  // no dropped columns: trivially F = 0
        t.df1 = 1;
        t.f = 0.0;
        t.p_value = 1.0;
        return t;
    }
    t.df1 = full.k - restricted.k;
    const double num = std::max(restricted.rss - full.rss, 0.0) / double(t.df1);
    const double den = full.rss / double(t.df2);
    t.f = den > 0.0 ? num / den : 0.0;
    t.p_value = f_p_value(t.f, t.df1, t.df2);
    return t;
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                            std::lgamma(b) + a * std::log(x) +
                            b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double f_p_value(double f, std::size_t df1, std::size_t df2) {
    if (f <= 0.0) return 1.0;
    const double d1 = double(df1), d2 = double(df2);
    return regularized_incomplete_beta(d2 / 2.0, d1 / 2.0,
                                       d2 / (d2 + d1 * f));
}

double t_p_value(double t, std::size_t df) {
    const double v = double(df);
    return regularized_incomplete_beta(v / 2.0, 0.5, v / (v + t * t));
}

std::string significance_stars(double p) {
    if (p < 0.001) return "***";
    if (p < 0.01) return "**";
    if (p < 0.05) return "*";
    return "";
}

std::vector<Table4Column> run_table4(std::span<const AttributedTweet> records,
                                     MultiStateMode multi_state) {
    struct Layout {
        const char* name;
        bool state_fx;
        bool date_fx;
        Subset subset;
        Aggregation agg;
    };
    static const Layout kLayouts[7] = {
        {"Baseline", false, false, Subset::All, Aggregation::PerTweet},
        {"State effects", true, false, Subset::All, Aggregation::PerTweet},
        {"Date effects", false, true, Subset::All, Aggregation::PerTweet},
        {"State & Date effects", true, true, Subset::All,
         Aggregation::PerTweet},
        {"Aggregated", true, true, Subset::All, Aggregation::PerUserDay},
        {"Non-Chinese Ethnicity", true, true, Subset::NonChinese,
         Aggregation::PerTweet},
        {"Chinese Ethnicity", true, true, Subset::ChineseOnly,
         Aggregation::PerTweet},
    };

    std::vector<AttributedTweet> aggregated;
    bool aggregated_ready = false;

    std::vector<Table4Column> out;
    for (int i = 0; i < 7; ++i) {
        Table4Column col;
        col.index = i + 1;
        col.name = kLayouts[i].name;
        col.spec.state_effects = kLayouts[i].state_fx;
        col.spec.date_effects = kLayouts[i].date_fx;
        col.spec.subset = kLayouts[i].subset;
        col.spec.aggregation = kLayouts[i].agg;
        col.spec.multi_state = multi_state;
        try {
            std::span<const AttributedTweet> input = records;
            if (col.spec.aggregation == Aggregation::PerUserDay) {
                if (!aggregated_ready) {
                    aggregated = aggregate_user_day(records);
                    aggregated_ready = true;
                }
                input = aggregated;
            }
            const DesignMatrix design = build_design(input, col.spec);
            // A column whose requested effect family collapsed to a single
            // level would silently duplicate another specification; treat it
            // as skipped instead.
            if (col.spec.date_effects && !design.reference_levels.count("date"))
                throw std::runtime_error("date effects dropped: single level");
            if (col.spec.state_effects &&
                !design.reference_levels.count("state"))
                throw std::runtime_error("state effects dropped: single level");
            col.result = ols_fit(design);
        } catch (const std::exception& e) {
            col.failure = e.what();
        }
        out.push_back(std::move(col));
    }
    return out;
}

}  // namespace geopulse
