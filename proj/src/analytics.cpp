#include "geopulse/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geopulse {

std::map<StateId, std::size_t> state_counts(
    std::span<const AttributedTweet> attributed,
    const std::vector<StateId>& universe) {
    std::map<StateId, std::size_t> counts;
    for (const auto& s : universe) counts[s] = 0;
    for (const auto& t : attributed) {
        for (const auto& s : t.states) ++counts[s];
    }
    return counts;
}

CountSummary summarize_counts(const std::map<StateId, std::size_t>& counts) {
    CountSummary s;
    s.n_states = counts.size();
    if (counts.empty()) return s;
    double sum = 0.0;
    s.min = std::int64_t(counts.begin()->second);
    s.max = s.min;
    for (const auto& [state, n] : counts) {
        sum += double(n);
        s.min = std::min(s.min, std::int64_t(n));
        s.max = std::max(s.max, std::int64_t(n));
    }
    s.mean = sum / double(counts.size());
    if (counts.size() > 1) {
        double sq = 0.0;
        for (const auto& [state, n] : counts) {
            const double d = double(n) - s.mean;
            sq += d * d;
        }
        s.stddev = std::sqrt(sq / double(counts.size() - 1));
    }
    return s;
}

std::vector<StateStats> friendliness_variance(
    std::span<const AttributedTweet> attributed, VarianceMode mode) {
    struct Acc {
        std::size_t n = 0;
        double sum = 0.0;
    };
    std::map<StateId, Acc> acc;
    for (const auto& t : attributed) {
        for (const auto& s : t.states) {
            auto& a = acc[s];
            ++a.n;
            a.sum += t.polarity;
        }
    }
    // Two passes: mean first, then centered squares, which keeps the
    // variance exact for constant inputs.
    std::map<StateId, double> sqsum;
    for (const auto& t : attributed) {
        for (const auto& s : t.states) {
            const double d = t.polarity - acc[s].sum / double(acc[s].n);
            sqsum[s] += d * d;
        }
    }
    std::vector<StateStats> out;
    out.reserve(acc.size());
    for (const auto& [state, a] : acc) {
        StateStats st;
        st.state = state;
        st.n = a.n;
        st.friendliness = a.sum / double(a.n);
        if (mode == VarianceMode::Population) {
            st.variance = sqsum[state] / double(a.n);
        } else {
            st.variance = a.n > 1 ? sqsum[state] / double(a.n - 1) : 0.0;
        }
        out.push_back(std::move(st));
    }
    return out;
}

std::vector<StateId> friendliness_ranking(
    const std::vector<StateStats>& stats) {
    std::vector<const StateStats*> by_f;
    for (const auto& s : stats) by_f.push_back(&s);
    std::sort(by_f.begin(), by_f.end(),
              [](const StateStats* a, const StateStats* b) {
                  if (a->friendliness != b->friendliness)
                      return a->friendliness > b->friendliness;
                  return a->state < b->state;
              });
    std::vector<StateId> out;
    for (const auto* s : by_f) out.push_back(s->state);
    return out;
}

std::vector<StateId> homogeneity_ranking(const std::vector<StateStats>& stats) {
    std::vector<const StateStats*> by_v;
    for (const auto& s : stats) by_v.push_back(&s);
    std::sort(by_v.begin(), by_v.end(),
              [](const StateStats* a, const StateStats* b) {
                  if (a->variance != b->variance)
                      return a->variance < b->variance;
                  return a->state < b->state;
              });
    std::vector<StateId> out;
    for (const auto* s : by_v) out.push_back(s->state);
    return out;
}

StateProvinceMatrix build_matrix(std::span<const AttributedTweet> attributed,
                                 const std::vector<StateId>& states,
                                 const std::vector<ProvinceId>& provinces) {
    StateProvinceMatrix m;
    m.rows = states;
    m.cols = provinces;
    std::sort(m.rows.begin(), m.rows.end());
    std::sort(m.cols.begin(), m.cols.end());
    m.values.assign(m.rows.size() * m.cols.size(), 0.0);
    m.row_counts.assign(m.rows.size(), 0);

    std::map<StateId, std::size_t> row_index;
    std::map<ProvinceId, std::size_t> col_index;
    for (std::size_t i = 0; i < m.rows.size(); ++i) row_index[m.rows[i]] = i;
    for (std::size_t j = 0; j < m.cols.size(); ++j) col_index[m.cols[j]] = j;

    for (const auto& t : attributed) {
        if (t.states.empty() || t.provinces.empty()) continue;
        ++m.contributing_tweets;
        for (const auto& s : t.states) {
            const std::size_t r = row_index.at(s);
            ++m.row_counts[r];
            for (const auto& p : t.provinces) {
                m.values[r * m.cols.size() + col_index.at(p)] += 1.0;
            }
        }
    }
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
        double row_sum = 0.0;
        for (std::size_t c = 0; c < m.cols.size(); ++c)
            row_sum += m.at(r, c);
        if (row_sum > 0.0) {
            for (std::size_t c = 0; c < m.cols.size(); ++c)
                m.values[r * m.cols.size() + c] /= row_sum;
        }
    }
    return m;
}

ProvinceId top_province(const StateProvinceMatrix& m, const StateId& state) {
    const auto it = std::find(m.rows.begin(), m.rows.end(), state);
    if (it == m.rows.end())
        throw std::runtime_error("unknown state: " + state);
    const std::size_t r = std::size_t(it - m.rows.begin());
    std::size_t best = 0;
    for (std::size_t c = 1; c < m.cols.size(); ++c) {
        const double v = m.at(r, c);
        const double bv = m.at(r, best);
        if (v > bv) {
            best = c;
        } else if (v == bv) {
            // Ties side with Beijing; otherwise the earlier id stands.
            if (m.cols[c] == "Beijing") best = c;
        }
    }
    return m.cols[best];
}

std::vector<DailyPoint> daily_series(
    std::span<const AttributedTweet> attributed) {
    struct Acc {
        double sum = 0.0;
        std::size_t n = 0;
    };
    std::map<std::int64_t, Acc> days;
    for (const auto& t : attributed) {
        auto& a = days[t.day];
        a.sum += t.polarity;
        ++a.n;
    }
    std::vector<DailyPoint> out;
    out.reserve(days.size());
    for (const auto& [day, a] : days)
        out.push_back({day, a.sum / double(a.n), a.n});
    return out;
}

CorrelationReport correlate_external(
    const std::map<StateId, std::size_t>& counts,
    const std::map<StateId, double>& external) {
    if (counts.size() != external.size())
        throw std::runtime_error("key mismatch");
    for (const auto& [state, v] : counts) {
        if (!external.count(state)) throw std::runtime_error("key mismatch");
    }
    std::vector<double> x, y;
    x.reserve(counts.size());
    y.reserve(counts.size());
    for (const auto& [state, n] : counts) {
        x.push_back(external.at(state));
        y.push_back(n >= 1 ? std::log(double(n)) : std::log(double(n) + 1.0));
    }
    const std::size_t n = x.size();
    CorrelationReport rep;
    rep.n = n;
    if (n < 2) return rep;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx > 0.0 && syy > 0.0) rep.r = sxy / std::sqrt(sxx * syy);
    if (sxx > 0.0) {
        rep.beta = sxy / sxx;
        if (n >= 3) {
            double rss = 0.0;
            const double alpha = my - rep.beta * mx;
            for (std::size_t i = 0; i < n; ++i) {
                const double e = y[i] - alpha - rep.beta * x[i];
                rss += e * e;
            }
            rep.beta_se = std::sqrt(rss / double(n - 2) / sxx);
        }
    }
    return rep;
}

}  // namespace geopulse
