#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "forage/graph.hpp"

namespace forage {

struct IngestStats {
    std::size_t lines = 0;          // non-blank lines seen
    std::size_t malformed = 0;      // rejected lines
    std::size_t content_edges = 0;
    std::size_t structural_edges = 0;
    std::size_t dangling_parents = 0;
    std::uint64_t digest = 0;       // FNV-1a over the file bytes
};

struct IngestResult {
    SocialGraph graph;
    IngestStats stats;
};

// One JSON Lines record; returns nothing (and an explanation) for a
// line that cannot become a valid PostRecord.
std::optional<PostRecord> parse_post_record(std::string_view line, std::string* error = nullptr);

// Reads a JSON Lines corpus into a graph. Malformed lines (bad JSON,
// missing or invalid fields, duplicate ids) are counted and skipped;
// more than 10% of them aborts with DataError, as does an unreadable
// file. A whitespace-only line is ignored entirely.
IngestResult ingest(const std::filesystem::path& path);

std::uint64_t fnv1a_file(const std::filesystem::path& path);
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace forage
