#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "forage/baselines.hpp"
#include "forage/eeholsif.hpp"
#include "forage/eho.hpp"
#include "forage/report.hpp"

namespace forage {

// Everything a run needs, collected from a key=value config file and/or
// command-line flags (flags win; they are applied last).
struct ExperimentConfig {
    std::string engine = "eeholsif";  // ehoif | eeholsif | acsif | psoif
    std::filesystem::path corpus;
    std::vector<std::string> interests;     // inline queries
    std::filesystem::path interests_file;   // one query per line
    std::size_t interest_top_n = 10;
    std::uint64_t seed = 0;
    std::filesystem::path snapshot;  // clustering snapshot; empty -> build in memory
    bool no_cluster = false;         // never build; the snapshot must exist
    int cluster_k = 0;               // 0 -> the engine's k
    int cluster_max_iter = 100;
    bool timing = true;              // off -> wall_time fields written as 0
    int top_n = 10;                  // ranked paths kept per query
    std::filesystem::path stopwords_file;  // empty -> bundled list

    EhoParams eho;
    EeholsifParams eeholsif;
    AcsParams acs;
    PsoParams pso;
};

// Applies one key=value pair. Shared names (alpha, beta, seed, ...) are
// applied to every engine block they belong to; only the active
// engine's block is echoed into a report. Throws UsageError on unknown
// keys or unparsable values.
void apply_config_entry(ExperimentConfig& config, std::string_view key, std::string_view value);

// Plain-text config: key=value per line; '#' comments and blank lines
// ignored.
ExperimentConfig load_config_file(const std::filesystem::path& path);

// Parameter echo for the active engine, in a stable order.
std::vector<std::pair<std::string, std::string>> echo_params(const ExperimentConfig& config);

// End-to-end run: ingest, vectorize, load-or-build the clustering when
// the engine needs one, then one search per interest query. Wall time
// is measured around the search loop only.
RunReport run_experiment(const ExperimentConfig& config);

}  // namespace forage
