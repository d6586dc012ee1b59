#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geopulse/cli.hpp"

namespace {

struct Flags {
    std::vector<std::string> inputs;
    std::string config_path;
    std::string out;
    unsigned threads = 1;
    std::string states, provinces, stoplist, lexicon, surnames;
    std::string external_index;
    std::string window;
    std::string variance;
    std::string surname_match;
    std::string multi_state;
};

void add_common_options(CLI::App* cmd, Flags& f) {
    cmd->add_option("-i,--input", f.inputs, "input NDJSON files");
    cmd->add_option("--config", f.config_path, "JSON config file");
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--threads", f.threads, "worker thread count");
    cmd->add_option("--states", f.states, "state gazetteer CSV");
    cmd->add_option("--provinces", f.provinces, "province gazetteer CSV");
    cmd->add_option("--stoplist", f.stoplist, "stop-list CSV");
    cmd->add_option("--lexicon", f.lexicon, "polarity lexicon CSV");
    cmd->add_option("--surnames", f.surnames, "surname list file");
    cmd->add_option("--external-index", f.external_index,
                    "external per-state index CSV (state_id,value)");
    cmd->add_option("--window", f.window,
                    "inclusive date window YYYY-MM-DD:YYYY-MM-DD");
    cmd->add_option("--variance", f.variance, "population|sample")
        ->check(CLI::IsMember({"population", "sample"}));
    cmd->add_option("--surname-match", f.surname_match, "segment|substring")
        ->check(CLI::IsMember({"segment", "substring"}));
    cmd->add_option("--multi-state", f.multi_state, "expand|first")
        ->check(CLI::IsMember({"expand", "first"}));
}

// Precedence: CLI flag > config file > built-in default.
geopulse::PipelineConfig build_config(const Flags& f, CLI::App* cmd) {
    geopulse::PipelineConfig c;
    if (!f.config_path.empty())
        c = geopulse::load_config_file(f.config_path);
    if (cmd->count("--input")) c.inputs = f.inputs;
    if (cmd->count("--out")) c.out_dir = f.out;
    if (cmd->count("--threads")) c.threads = f.threads;
    if (cmd->count("--states")) c.states_file = f.states;
    if (cmd->count("--provinces")) c.provinces_file = f.provinces;
    if (cmd->count("--stoplist")) c.stoplist_file = f.stoplist;
    if (cmd->count("--lexicon")) c.lexicon_file = f.lexicon;
    if (cmd->count("--surnames")) c.surnames_file = f.surnames;
    if (cmd->count("--external-index"))
        c.external_index_file = f.external_index;
    if (cmd->count("--window")) c.window = f.window;
    if (cmd->count("--variance"))
        c.variance = f.variance == "sample"
                         ? geopulse::VarianceMode::Sample
                         : geopulse::VarianceMode::Population;
    if (cmd->count("--surname-match"))
        c.surname_match = f.surname_match == "substring"
                              ? geopulse::SurnameMatchMode::Substring
                              : geopulse::SurnameMatchMode::Segment;
    if (cmd->count("--multi-state"))
        c.multi_state = f.multi_state == "first"
                            ? geopulse::MultiStateMode::FirstOnly
                            : geopulse::MultiStateMode::Expand;
    geopulse::resolve_data_files(c);
    return c;
}

int run_command(const Flags& f, CLI::App* cmd,
                int (*fn)(const geopulse::PipelineConfig&)) {
    try {
        return fn(build_config(f, cmd));
    } catch (const std::exception& e) {
        // Config loading failures land here; command bodies map their own.
        std::cerr << "error: " << e.what() << "\n";
        const std::string m = e.what();
        return m.find("cannot open") != std::string::npos ? geopulse::kExitIo
                                                          : geopulse::kExitData;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geo-tagged tweet attribution and state-level analytics"};
    app.set_version_flag("--version", geopulse::kVersion);
    app.require_subcommand(1);

    Flags flags;
    int exit_code = 0;

    auto* ingest = app.add_subcommand(
        "ingest", "parse NDJSON inputs into a normalized corpus");
    add_common_options(ingest, flags);
    ingest->callback([&] {
        exit_code = run_command(flags, ingest, geopulse::cmd_ingest);
    });

    auto* analyze = app.add_subcommand(
        "analyze", "attribute the corpus and write the report bundle");
    add_common_options(analyze, flags);
    analyze->callback([&] {
        exit_code = run_command(flags, analyze, geopulse::cmd_analyze);
    });

    auto* regress = app.add_subcommand(
        "regress", "estimate the polarity regressions and joint tests");
    add_common_options(regress, flags);
    regress->callback([&] {
        exit_code = run_command(flags, regress, geopulse::cmd_regress);
    });

    auto* validate = app.add_subcommand(
        "validate-sentiment", "score the scorer against emoticon labels");
    add_common_options(validate, flags);
    validate->callback([&] {
        exit_code =
            run_command(flags, validate, geopulse::cmd_validate_sentiment);
    });

    CLI11_PARSE(app, argc, argv);
    return exit_code;
}
