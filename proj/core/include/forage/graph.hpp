#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "forage/term_vector.hpp"

namespace forage {

using EdgeId = std::uint32_t;
using UserIndex = std::uint32_t;

enum class EdgeKind { Post, Repost, Reply, Mention, Follow, Friendship };

// Content-sharing kinds carry a post; the rest are structural.
bool is_content_kind(EdgeKind kind);
std::optional<EdgeKind> parse_edge_kind(std::string_view name);
std::string_view to_string(EdgeKind kind);

// One line of the ingestion format; stands in for a crawled record.
struct PostRecord {
    std::string id;
    std::string author;
    std::string kind;
    std::optional<std::string> target_user;
    std::optional<std::string> parent_post;
    std::string text;
};

// A content-sharing edge. Edge ids are dense [0, m) in input order.
// `vector` starts empty and is filled by the text pipeline.
struct ContentEdge {
    EdgeId id = 0;
    UserIndex source = 0;
    UserIndex target = 0;
    EdgeKind kind = EdgeKind::Post;
    std::string post_id;
    std::string raw_text;
    TermVector vector;
};

struct StructuralEdge {
    UserIndex source = 0;
    UserIndex target = 0;
    EdgeKind kind = EdgeKind::Follow;
};

struct BuildWarnings {
    std::size_t dangling_parents = 0;
};

// Immutable after build(); every accessor is safe for concurrent reads.
// Storage is directed, adjacency is the undirected shared-vertex rule
// over content edges only.
class SocialGraph {
public:
    SocialGraph() = default;

    // Throws UsageError on a duplicate post id (named in the message),
    // an unknown edge kind, or a structural record without a target.
    static SocialGraph build(std::span<const PostRecord> records);

    std::size_t user_count() const { return users_.size(); }
    const std::string& user_name(UserIndex u) const { return users_[u]; }
    std::optional<UserIndex> find_user(std::string_view name) const;

    std::size_t content_edge_count() const { return content_edges_.size(); }
    std::size_t edge_count() const { return content_edges_.size() + structural_edges_.size(); }
    const ContentEdge& content_edge(EdgeId e) const;
    std::span<const ContentEdge> content_edges() const { return content_edges_; }
    std::span<const StructuralEdge> structural_edges() const { return structural_edges_; }

    // Content edges incident to a user.
    std::span<const EdgeId> incident_content_edges(UserIndex u) const;

    // Content edges != e sharing at least one endpoint with e, sorted by
    // id. Throws UsageError when e is not a content edge of this graph.
    std::span<const EdgeId> adjacent_content_edges(EdgeId e) const;

    const BuildWarnings& warnings() const { return warnings_; }

    // Text-pipeline hook; the graph stays logically immutable afterwards.
    void set_vector(EdgeId e, TermVector v);

private:
    UserIndex intern_user(const std::string& name);
    void build_adjacency();

    std::vector<std::string> users_;
    std::unordered_map<std::string, UserIndex> user_index_;
    std::vector<ContentEdge> content_edges_;
    std::vector<StructuralEdge> structural_edges_;
    std::vector<std::vector<EdgeId>> incidence_;  // user -> content edge ids
    std::vector<std::vector<EdgeId>> adjacency_;  // edge -> neighbor edge ids
    BuildWarnings warnings_;
};

SocialGraph build_graph(std::span<const PostRecord> records);

// Free-function form of the shared-vertex neighborhood query.
std::vector<EdgeId> adjacent_content_edges(const SocialGraph& g, EdgeId e);

}  // namespace forage
