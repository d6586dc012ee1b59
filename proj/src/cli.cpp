#include "geopulse/cli.hpp"

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "geopulse/csv.hpp"
#include "geopulse/datetime.hpp"
#include "geopulse/pipeline.hpp"

#ifndef GEOPULSE_BUNDLED_DATA_DIR
#define GEOPULSE_BUNDLED_DATA_DIR "data"
#endif

namespace geopulse {

namespace {

using nlohmann::json;

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open())
        throw std::runtime_error("cannot open file: " + path.string());
    return out;
}

void write_report_header(std::ostream& out, const PipelineConfig& c) {
    out << "# geopulse " << kVersion << " config=" << config_hash(c) << "\n";
}

json meta_object(const PipelineConfig& c) {
    return json{{"version", kVersion}, {"config", config_hash(c)}};
}

void write_json_report(const std::filesystem::path& path, const json& body) {
    auto out = open_output(path);
    out << body.dump(2) << "\n";
}

// Maps exceptions onto the stable exit codes: unreadable/unwritable files
// are I/O failures, everything else is a data mismatch.
template <typename F>
int run_guarded(F&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        const std::string m = e.what();
        if (m.find("cannot open") != std::string::npos ||
            m.find("cannot read") != std::string::npos)
            return kExitIo;
        return kExitData;
    }
}

std::pair<std::int64_t, std::int64_t> parse_window(const std::string& w) {
    const auto colon = w.find(':');
    if (colon == std::string::npos)
        throw std::runtime_error("invalid window, expected "
                                 "YYYY-MM-DD:YYYY-MM-DD: " + w);
    const auto first = parse_civil_day(w.substr(0, colon));
    const auto last = parse_civil_day(w.substr(colon + 1));
    if (!first || !last)
        throw std::runtime_error("invalid window, expected "
                                 "YYYY-MM-DD:YYYY-MM-DD: " + w);
    if (*first > *last)
        throw std::runtime_error("invalid window, start after end: " + w);
    return {*first, *last};
}

// Reads an already-ingested corpus: parse, drop unparseable lines, dedup,
// then apply the optional date window.
std::vector<TweetRecord> read_corpus(const PipelineConfig& c) {
    if (c.inputs.empty()) throw std::runtime_error("no input files given");
    std::vector<TweetRecord> records;
    for (const auto& path : c.inputs) {
        std::ifstream in(path, std::ios::binary);
        if (!in.is_open())
            throw std::runtime_error("cannot open file: " + path);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            auto parsed = parse_record(line);
            if (parsed.ok()) records.push_back(std::move(*parsed.record));
        }
    }
    records = dedup(records);
    if (!c.window.empty()) {
        const auto [first, last] = parse_window(c.window);
        records = filter_window(std::move(records), first, last);
    }
    return records;
}

// Owns the loaded data files behind a PipelineContext.
struct LoadedContext {
    StateGazetteer states;
    ProvinceGazetteer provinces;
    StopList stoplist;
    Lexicon lexicon;
    SurnameList surnames;
    PipelineContext ctx;
};

LoadedContext load_context(const PipelineConfig& c) {
    LoadedContext l;
    l.states = StateGazetteer::load_csv(c.states_file);
    l.provinces = ProvinceGazetteer::load_csv(c.provinces_file);
    l.stoplist = StopList::load_csv(c.stoplist_file);
    l.lexicon = Lexicon::load_csv(c.lexicon_file);
    l.surnames = SurnameList::load(c.surnames_file);
    l.ctx.states = &l.states;
    l.ctx.provinces = &l.provinces;
    l.ctx.stoplist = &l.stoplist;
    l.ctx.lexicon = &l.lexicon;
    l.ctx.surnames = &l.surnames;
    l.ctx.surname_mode = c.surname_match;
    return l;
}

std::map<StateId, double> read_external_index(const std::string& path) {
    std::map<StateId, double> index;
    for (const auto& row : read_csv_file(path)) {
        if (row.size() != 2)
            throw std::runtime_error("external index rows need exactly "
                                     "state_id,value: " + path);
        try {
            index[row[0]] = std::stod(row[1]);
        } catch (const std::exception&) {
            throw std::runtime_error("bad number in external index: " +
                                     row[1]);
        }
    }
    return index;
}

void write_counts_csv(const std::filesystem::path& path,
                      const PipelineConfig& c,
                      const std::map<StateId, std::size_t>& counts) {
    auto out = open_output(path);
    write_report_header(out, c);
    out << "state,n\n";
    for (const auto& [state, n] : counts) out << state << "," << n << "\n";
}

void write_state_stats_csv(const std::filesystem::path& path,
                           const PipelineConfig& c,
                           const std::vector<StateStats>& stats) {
    std::map<StateId, std::size_t> friendly_rank, homogeneous_rank;
    {
        const auto by_f = friendliness_ranking(stats);
        const auto by_v = homogeneity_ranking(stats);
        for (std::size_t i = 0; i < by_f.size(); ++i)
            friendly_rank[by_f[i]] = i + 1;
        for (std::size_t i = 0; i < by_v.size(); ++i)
            homogeneous_rank[by_v[i]] = i + 1;
    }
    auto out = open_output(path);
    write_report_header(out, c);
    out << "state,n,friendliness,variance,friendliness_rank,"
           "homogeneity_rank\n";
    for (const auto& s : stats) {
        out << s.state << "," << s.n << "," << fmt_fixed(s.friendliness, 6)
            << "," << fmt_fixed(s.variance, 6) << ","
            << friendly_rank.at(s.state) << "," << homogeneous_rank.at(s.state)
            << "\n";
    }
}

void write_matrix_csv(const std::filesystem::path& path,
                      const PipelineConfig& c,
                      const StateProvinceMatrix& m) {
    auto out = open_output(path);
    write_report_header(out, c);
    std::vector<std::string> header{"state", "contributing"};
    header.insert(header.end(), m.cols.begin(), m.cols.end());
    write_csv_row(out, header);
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
        std::vector<std::string> row{m.rows[r],
                                     std::to_string(m.row_counts[r])};
        for (std::size_t col = 0; col < m.cols.size(); ++col)
            row.push_back(fmt_fixed(m.at(r, col), 6));
        write_csv_row(out, row);
    }
}

void write_daily_series_csv(const std::filesystem::path& path,
                            const PipelineConfig& c,
                            const std::vector<DailyPoint>& series) {
    auto out = open_output(path);
    write_report_header(out, c);
    out << "date,mean_polarity,n\n";
    for (const auto& p : series)
        out << format_civil_day(p.day) << "," << fmt_fixed(p.mean_polarity, 6)
            << "," << p.n << "\n";
}

void write_correlation_csv(const std::filesystem::path& path,
                           const PipelineConfig& c,
                           const CorrelationReport& r) {
    auto out = open_output(path);
    write_report_header(out, c);
    out << "n,r,slope,slope_se\n";
    out << r.n << "," << fmt_general(r.r) << "," << fmt_general(r.beta) << ","
        << fmt_general(r.beta_se) << "\n";
}

void write_regression_csv(const std::filesystem::path& path,
                          const PipelineConfig& c,
                          const RegressionResult& r) {
    auto out = open_output(path);
    write_report_header(out, c);
    out << "term,coefficient,se,t,stars\n";
    for (std::size_t j = 0; j < r.labels.size(); ++j) {
        const double p = t_p_value(r.t_statistics[j], r.n - r.k);
        std::vector<std::string> row{
            r.labels[j], fmt_general(r.coefficients[j]),
            fmt_general(r.standard_errors[j]), fmt_general(r.t_statistics[j]),
            r.standard_errors[j] > 0.0 ? significance_stars(p) : ""};
        write_csv_row(out, row);
    }
}

}  // namespace

PipelineConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) throw std::runtime_error("cannot open file: " + path);
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        throw std::runtime_error("config file is not a JSON object: " + path);

    PipelineConfig c;
    for (const auto& [key, value] : doc.items()) {
        if (key == "inputs") {
            c.inputs = value.get<std::vector<std::string>>();
        } else if (key == "out") {
            c.out_dir = value.get<std::string>();
        } else if (key == "threads") {
            c.threads = value.get<unsigned>();
        } else if (key == "states") {
            c.states_file = value.get<std::string>();
        } else if (key == "provinces") {
            c.provinces_file = value.get<std::string>();
        } else if (key == "stoplist") {
            c.stoplist_file = value.get<std::string>();
        } else if (key == "lexicon") {
            c.lexicon_file = value.get<std::string>();
        } else if (key == "surnames") {
            c.surnames_file = value.get<std::string>();
        } else if (key == "external_index") {
            c.external_index_file = value.get<std::string>();
        } else if (key == "window") {
            c.window = value.get<std::string>();
        } else if (key == "variance") {
            const auto v = value.get<std::string>();
            if (v == "population") c.variance = VarianceMode::Population;
            else if (v == "sample") c.variance = VarianceMode::Sample;
            else throw std::runtime_error("unknown variance mode: " + v);
        } else if (key == "surname_match") {
            const auto v = value.get<std::string>();
            if (v == "segment") c.surname_match = SurnameMatchMode::Segment;
            else if (v == "substring")
                c.surname_match = SurnameMatchMode::Substring;
            else throw std::runtime_error("unknown surname match mode: " + v);
        } else if (key == "multi_state") {
            const auto v = value.get<std::string>();
            if (v == "expand") c.multi_state = MultiStateMode::Expand;
            else if (v == "first") c.multi_state = MultiStateMode::FirstOnly;
            else throw std::runtime_error("unknown multi-state mode: " + v);
        } else {
            throw std::runtime_error("unknown config key: " + key);
        }
    }
    return c;
}

void resolve_data_files(PipelineConfig& c) {
    std::string dir = GEOPULSE_BUNDLED_DATA_DIR;
    if (const char* env = std::getenv("GEOPULSE_DATA_DIR");
        env && *env != '\0')
        dir = env;
    const auto fill = [&](std::string& field, const char* name) {
        if (field.empty()) field = dir + "/" + name;
    };
    fill(c.states_file, "states.csv");
    fill(c.provinces_file, "provinces.csv");
    fill(c.stoplist_file, "stoplist.csv");
    fill(c.lexicon_file, "lexicon.csv");
    fill(c.surnames_file, "surnames.txt");
}

std::string config_hash(const PipelineConfig& c) {
    std::string canon = std::string("v=") + kVersion;
    canon += ";window=" + c.window;
    canon += ";variance=";
    canon += c.variance == VarianceMode::Sample ? "sample" : "population";
    canon += ";surname=";
    canon +=
        c.surname_match == SurnameMatchMode::Substring ? "substring"
                                                       : "segment";
    canon += ";multistate=";
    canon += c.multi_state == MultiStateMode::FirstOnly ? "first" : "expand";

    std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64-bit
    for (unsigned char b : canon) {
        h ^= b;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

int cmd_ingest(const PipelineConfig& c) {
    return run_guarded([&]() -> int {
        if (c.inputs.empty()) throw std::runtime_error("no input files given");
        std::filesystem::create_directories(c.out_dir);

        std::vector<TweetRecord> parsed;
        struct Reject {
            std::size_t line_number;
            RejectReason reason;
        };
        std::vector<Reject> rejects;
        std::size_t syntax = 0, schema = 0, clock = 0, line_number = 0;

        for (const auto& path : c.inputs) {
            std::ifstream in(path, std::ios::binary);
            if (!in.is_open())
                throw std::runtime_error("cannot open file: " + path);
            std::string line;
            while (std::getline(in, line)) {
                if (!line.empty() && line.back() == '\r') line.pop_back();
                ++line_number;
                if (line.empty()) continue;
                auto result = parse_record(line);
                if (result.ok()) {
                    parsed.push_back(std::move(*result.record));
                    continue;
                }
                rejects.push_back({line_number, result.reject});
                switch (result.reject) {
                    case RejectReason::Syntax: ++syntax; break;
                    case RejectReason::Schema: ++schema; break;
                    case RejectReason::Clock: ++clock; break;
                }
            }
        }

        const auto unique = dedup(parsed);
        const std::size_t duplicates = parsed.size() - unique.size();

        const std::filesystem::path out_dir = c.out_dir;
        {
            auto out = open_output(out_dir / "corpus.jsonl");
            for (const auto& r : unique) out << serialize_record(r) << "\n";
        }
        {
            auto out = open_output(out_dir / "rejects.csv");
            write_report_header(out, c);
            out << "line_number,reason\n";
            for (const auto& r : rejects)
                out << r.line_number << "," << to_string(r.reason) << "\n";
        }
        write_json_report(
            out_dir / "ingest_summary.json",
            json{{"_meta", meta_object(c)},
                 {"accepted", unique.size()},
                 {"duplicates", duplicates},
                 {"rejected", json{{"syntax", syntax},
                                   {"schema", schema},
                                   {"clock", clock},
                                   {"total", rejects.size()}}}});

        std::cout << "accepted=" << unique.size()
                  << " duplicates=" << duplicates
                  << " rejected=" << rejects.size() << " (syntax=" << syntax
                  << " schema=" << schema << " clock=" << clock << ")\n";
        return kExitOk;
    });
}

int cmd_analyze(const PipelineConfig& c) {
    return run_guarded([&]() -> int {
        std::filesystem::create_directories(c.out_dir);
        const auto records = read_corpus(c);
        const auto loaded = load_context(c);

        AttributionStats stats;
        const auto attributed =
            attribute_corpus(records, loaded.ctx, c.threads, &stats);

        const std::filesystem::path out_dir = c.out_dir;
        const auto counts =
            state_counts(attributed, loaded.states.state_ids());
        write_counts_csv(out_dir / "counts.csv", c, counts);

        const auto per_state = friendliness_variance(attributed, c.variance);
        write_state_stats_csv(out_dir / "state_stats.csv", c, per_state);

        const auto matrix =
            build_matrix(attributed, loaded.states.state_ids(),
                         loaded.provinces.province_ids());
        write_matrix_csv(out_dir / "matrix.csv", c, matrix);

        const auto series = daily_series(attributed);
        write_daily_series_csv(out_dir / "daily_series.csv", c, series);

        const auto summary = summarize_counts(counts);
        json body{{"_meta", meta_object(c)},
                  {"input", stats.input},
                  {"attributed", stats.attributed},
                  {"stopped", stats.stopped},
                  {"unattributed", stats.unattributed},
                  {"count_summary", json{{"mean", summary.mean},
                                         {"stddev", summary.stddev},
                                         {"min", summary.min},
                                         {"max", summary.max},
                                         {"n_states", summary.n_states}}},
                  {"matrix_contributing", matrix.contributing_tweets}};

        if (!c.external_index_file.empty()) {
            const auto external = read_external_index(c.external_index_file);
            const auto corr = correlate_external(counts, external);
            write_correlation_csv(out_dir / "correlation.csv", c, corr);
            body["correlation"] = json{{"n", corr.n},
                                       {"r", corr.r},
                                       {"slope", corr.beta},
                                       {"slope_se", corr.beta_se}};
        }
        write_json_report(out_dir / "summary.json", body);

        std::cout << "attributed=" << stats.attributed
                  << " stopped=" << stats.stopped
                  << " unattributed=" << stats.unattributed << "\n";
        return kExitOk;
    });
}

int cmd_regress(const PipelineConfig& c) {
    return run_guarded([&]() -> int {
        std::filesystem::create_directories(c.out_dir);
        const auto records = read_corpus(c);
        const auto loaded = load_context(c);

        AttributionStats stats;
        const auto attributed =
            attribute_corpus(records, loaded.ctx, c.threads, &stats);

        const auto columns = run_table4(attributed, c.multi_state);
        const std::filesystem::path out_dir = c.out_dir;

        json column_summaries = json::array();
        std::size_t failures = 0;
        for (const auto& col : columns) {
            json entry{{"index", col.index}, {"name", col.name}};
            if (col.result) {
                const auto& r = *col.result;
                write_regression_csv(
                    out_dir /
                        ("regression_col" + std::to_string(col.index) +
                         ".csv"),
                    c, r);
                entry["n"] = r.n;
                entry["k"] = r.k;
                entry["rss"] = r.rss;
                entry["adj_r2"] = r.adj_r_squared;
            } else {
                ++failures;
                entry["failure"] = col.failure;
                std::cerr << "column " << col.index << " (" << col.name
                          << ") skipped: " << col.failure << "\n";
            }
            column_summaries.push_back(std::move(entry));
        }

        // Joint significance of each dummy family, judged against the
        // both-effects column on identical rows.
        json ftest_summaries = json::array();
        if (columns[3].result) {
            auto out = open_output(out_dir / "ftests.csv");
            write_report_header(out, c);
            out << "family,f,df1,df2,p\n";
            const auto refit = [&](bool states_on, bool dates_on) {
                RegressionSpec spec = columns[3].spec;
                spec.state_effects = states_on;
                spec.date_effects = dates_on;
                return ols_fit(build_design(attributed, spec));
            };
            const auto emit = [&](const char* family,
                                  const RegressionResult& restricted) {
                const auto t = joint_f_test(*columns[3].result, restricted);
                out << family << "," << fmt_general(t.f) << "," << t.df1
                    << "," << t.df2 << "," << fmt_general(t.p_value) << "\n";
                ftest_summaries.push_back(json{{"family", family},
                                               {"f", t.f},
                                               {"df1", t.df1},
                                               {"df2", t.df2},
                                               {"p", t.p_value}});
            };
            try {
                emit("state", refit(false, true));
                emit("date", refit(true, false));
            } catch (const std::exception& e) {
                std::cerr << "f-tests skipped: " << e.what() << "\n";
            }
        }

        write_json_report(out_dir / "regression_summary.json",
                          json{{"_meta", meta_object(c)},
                               {"columns", column_summaries},
                               {"ftests", ftest_summaries}});

        std::cout << "columns_ok=" << (columns.size() - failures)
                  << " columns_failed=" << failures << "\n";
        return failures == columns.size() ? kExitEstimation : kExitOk;
    });
}

int cmd_validate_sentiment(const PipelineConfig& c) {
    return run_guarded([&]() -> int {
        std::filesystem::create_directories(c.out_dir);
        const auto records = read_corpus(c);
        const auto lexicon = Lexicon::load_csv(c.lexicon_file);

        const auto metrics = validate_emoticons(records, lexicon);
        const std::filesystem::path out_dir = c.out_dir;
        {
            auto out = open_output(out_dir / "validation.csv");
            write_report_header(out, c);
            out << "n,excluded_both,sensitivity,specificity,accuracy\n";
            out << metrics.n << "," << metrics.excluded_both << ","
                << fmt_fixed(metrics.sensitivity, 6) << ","
                << fmt_fixed(metrics.specificity, 6) << ","
                << fmt_fixed(metrics.accuracy, 6) << "\n";
        }
        std::cout << "n=" << metrics.n
                  << " excluded_both=" << metrics.excluded_both
                  << " sensitivity=" << fmt_fixed(metrics.sensitivity, 6)
                  << " specificity=" << fmt_fixed(metrics.specificity, 6)
                  << " accuracy=" << fmt_fixed(metrics.accuracy, 6) << "\n";
        return kExitOk;
    });
}

}  // namespace geopulse
