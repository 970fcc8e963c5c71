#include "forage/ingest.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

#include "forage/error.hpp"

namespace forage {

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t fnv1a_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open corpus file: " + path.string());
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buffer[1 << 16];
    while (in.read(buffer, sizeof buffer) || in.gcount() > 0) {
        h = fnv1a({buffer, static_cast<std::size_t>(in.gcount())}, h);
    }
    return h;
}

std::optional<PostRecord> parse_post_record(std::string_view line, std::string* error) {
    const nlohmann::json doc = nlohmann::json::parse(line, nullptr, false);
    auto fail = [&](std::string why) -> std::optional<PostRecord> {
        if (error) *error = std::move(why);
        return std::nullopt;
    };
    if (doc.is_discarded() || !doc.is_object()) return fail("not a JSON object");

    PostRecord rec;
    if (!doc.contains("id") || !doc["id"].is_string()) return fail("missing string field 'id'");
    rec.id = doc["id"].get<std::string>();
    if (rec.id.empty()) return fail("empty id");

    if (!doc.contains("author") || !doc["author"].is_string()) {
        return fail("missing string field 'author'");
    }
    rec.author = doc["author"].get<std::string>();
    if (rec.author.empty()) return fail("empty author");

    if (!doc.contains("kind") || !doc["kind"].is_string()) {
        return fail("missing string field 'kind'");
    }
    rec.kind = doc["kind"].get<std::string>();
    const auto kind = parse_edge_kind(rec.kind);
    if (!kind) return fail("unknown edge kind '" + rec.kind + "'");

    if (doc.contains("target_user")) {
        if (!doc["target_user"].is_string()) return fail("'target_user' must be a string");
        rec.target_user = doc["target_user"].get<std::string>();
    }
    if (doc.contains("parent_post")) {
        if (!doc["parent_post"].is_string()) return fail("'parent_post' must be a string");
        rec.parent_post = doc["parent_post"].get<std::string>();
    }
    if (doc.contains("text")) {
        if (!doc["text"].is_string()) return fail("'text' must be a string");
        rec.text = doc["text"].get<std::string>();
    }

    if (!is_content_kind(*kind) && (!rec.target_user || rec.target_user->empty())) {
        return fail("structural record without target_user");
    }
    return rec;
}

IngestResult ingest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open corpus file: " + path.string());

    IngestResult result;
    result.stats.digest = fnv1a_file(path);

    std::vector<PostRecord> records;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ++result.stats.lines;
        std::string why;
        auto rec = parse_post_record(line, &why);
        if (!rec) {
            ++result.stats.malformed;
            continue;
        }
        if (!seen_ids.insert(rec->id).second) {
            ++result.stats.malformed;  // duplicate id
            continue;
        }
        records.push_back(std::move(*rec));
    }

    if (result.stats.lines > 0 &&
        result.stats.malformed * 10 > result.stats.lines) {
        std::ostringstream msg;
        msg << "corpus " << path.string() << " has " << result.stats.malformed << " of "
            << result.stats.lines << " lines malformed (more than 10%)";
        throw DataError(msg.str());
    }

    result.graph = SocialGraph::build(records);
    result.stats.content_edges = result.graph.content_edge_count();
    result.stats.structural_edges = result.graph.structural_edges().size();
    result.stats.dangling_parents = result.graph.warnings().dangling_parents;
    return result;
}

}  // namespace forage
