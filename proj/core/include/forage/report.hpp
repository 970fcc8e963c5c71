#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "forage/foraging.hpp"

namespace forage {

// One interest query's outcome, mirroring the comparison axes the CLI
// reports on: relevance score, surfing depth, convergence and time.
struct QueryRow {
    std::string interest_input;
    std::vector<std::string> interest_terms;
    SurfingPath best_path;
    std::vector<std::string> best_path_texts;
    double score = 0.0;
    double wall_seconds = 0.0;
    int surfing_depth = 0;
    int convergence_generation = 0;
    std::vector<double> curve;        // best-so-far fitness per generation
    std::vector<SurfingPath> ranked;  // top-n ranked paths (best first)
};

struct RunReport {
    std::string engine;
    std::uint64_t seed = 0;
    std::uint64_t corpus_digest = 0;
    std::vector<std::pair<std::string, std::string>> params;  // full echo, stable order
    std::vector<QueryRow> rows;
};

// Shortest representation that parses back to the exact same double.
std::string format_double(double v);

// RFC 4180 quoting when the field needs it.
std::string csv_escape(const std::string& field);

// Writes <base>.csv (one row per query), <base>_curves.csv
// (query, generation, best_fitness in long format) and
// <base>_params.txt (parameter echo). Column order is fixed.
void write_report(const RunReport& report, const std::filesystem::path& base);

}  // namespace forage
