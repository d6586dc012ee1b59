#pragma once

#include <string>
#include <vector>

#include "geopulse/analytics.hpp"
#include "geopulse/ethnic.hpp"
#include "geopulse/regression.hpp"

namespace geopulse {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitEstimation = 4;

struct PipelineConfig {
    std::vector<std::string> inputs;  // NDJSON files (raw or ingested)
    std::string out_dir = "out";
    unsigned threads = 1;
    std::string states_file;
    std::string provinces_file;
    std::string stoplist_file;
    std::string lexicon_file;
    std::string surnames_file;
    std::string external_index_file;  // optional: state_id,value CSV
    std::string window;               // "YYYY-MM-DD:YYYY-MM-DD", empty = off
    VarianceMode variance = VarianceMode::Population;
    SurnameMatchMode surname_match = SurnameMatchMode::Segment;
    MultiStateMode multi_state = MultiStateMode::Expand;
};

// Reads a JSON config file. Unknown keys are errors so typos cannot be
// silently ignored.
PipelineConfig load_config_file(const std::string& path);

// Fills empty data-file fields from $GEOPULSE_DATA_DIR, falling back to the
// directory bundled at build time.
void resolve_data_files(PipelineConfig& c);

// FNV-1a hash of the semantic settings. File paths and the thread count are
// excluded so identical analyses hash identically across machines.
std::string config_hash(const PipelineConfig& c);

int cmd_ingest(const PipelineConfig& c);
int cmd_analyze(const PipelineConfig& c);
int cmd_regress(const PipelineConfig& c);
int cmd_validate_sentiment(const PipelineConfig& c);

}  // namespace geopulse
