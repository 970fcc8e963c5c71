#include "forage/graph.hpp"

#include <algorithm>

#include "forage/error.hpp"

namespace forage {

bool is_content_kind(EdgeKind kind) {
    switch (kind) {
        case EdgeKind::Post:
        case EdgeKind::Repost:
        case EdgeKind::Reply:
        case EdgeKind::Mention:
            return true;
        case EdgeKind::Follow:
        case EdgeKind::Friendship:
            return false;
    }
    return false;
}

std::optional<EdgeKind> parse_edge_kind(std::string_view name) {
    if (name == "post") return EdgeKind::Post;
    if (name == "repost") return EdgeKind::Repost;
    if (name == "reply") return EdgeKind::Reply;
    if (name == "mention") return EdgeKind::Mention;
    if (name == "follow") return EdgeKind::Follow;
    if (name == "friendship") return EdgeKind::Friendship;
    return std::nullopt;
}

std::string_view to_string(EdgeKind kind) {
    switch (kind) {
        case EdgeKind::Post: return "post";
        case EdgeKind::Repost: return "repost";
        case EdgeKind::Reply: return "reply";
        case EdgeKind::Mention: return "mention";
        case EdgeKind::Follow: return "follow";
        case EdgeKind::Friendship: return "friendship";
    }
    return "?";
}

UserIndex SocialGraph::intern_user(const std::string& name) {
    auto it = user_index_.find(name);
    if (it != user_index_.end()) return it->second;
    const auto idx = static_cast<UserIndex>(users_.size());
    users_.push_back(name);
    user_index_.emplace(name, idx);
    return idx;
}

SocialGraph SocialGraph::build(std::span<const PostRecord> records) {
    SocialGraph g;
    // post id -> author index, for parent resolution
    std::unordered_map<std::string, UserIndex> post_author;

    for (const PostRecord& rec : records) {
        if (rec.id.empty()) throw UsageError("record with empty id");
        if (rec.author.empty()) throw UsageError("record '" + rec.id + "' has empty author");
        if (post_author.contains(rec.id)) {
            throw UsageError("duplicate post id '" + rec.id + "'");
        }
        const auto kind = parse_edge_kind(rec.kind);
        if (!kind) {
            throw UsageError("record '" + rec.id + "' has unknown edge kind '" + rec.kind + "'");
        }

        const UserIndex source = g.intern_user(rec.author);
        post_author.emplace(rec.id, source);

        if (is_content_kind(*kind)) {
            UserIndex target = source;  // standalone posts become self-loops
            if (rec.target_user && !rec.target_user->empty()) {
                target = g.intern_user(*rec.target_user);
            } else if (rec.parent_post && !rec.parent_post->empty()) {
                auto parent = post_author.find(*rec.parent_post);
                if (parent != post_author.end()) {
                    target = parent->second;
                } else {
                    // Incomplete crawl: keep the edge, point it at the author.
                    ++g.warnings_.dangling_parents;
                }
            }
            ContentEdge edge;
            edge.id = static_cast<EdgeId>(g.content_edges_.size());
            edge.source = source;
            edge.target = target;
            edge.kind = *kind;
            edge.post_id = rec.id;
            edge.raw_text = rec.text;
            g.content_edges_.push_back(std::move(edge));
        } else {
            if (!rec.target_user || rec.target_user->empty()) {
                throw UsageError("structural record '" + rec.id + "' has no target user");
            }
            const UserIndex target = g.intern_user(*rec.target_user);
            g.structural_edges_.push_back({source, target, *kind});
        }
    }

    g.build_adjacency();
    return g;
}

void SocialGraph::build_adjacency() {
    incidence_.assign(users_.size(), {});
    for (const ContentEdge& e : content_edges_) {
        incidence_[e.source].push_back(e.id);
        if (e.target != e.source) incidence_[e.target].push_back(e.id);
    }

    adjacency_.assign(content_edges_.size(), {});
    for (const ContentEdge& e : content_edges_) {
        auto& neighbors = adjacency_[e.id];
        for (const UserIndex u : {e.source, e.target}) {
            for (const EdgeId other : incidence_[u]) {
                if (other != e.id) neighbors.push_back(other);
            }
            if (e.target == e.source) break;
        }
        std::sort(neighbors.begin(), neighbors.end());
        neighbors.erase(std::unique(neighbors.begin(), neighbors.end()), neighbors.end());
    }
}

std::optional<UserIndex> SocialGraph::find_user(std::string_view name) const {
    auto it = user_index_.find(std::string(name));
    if (it == user_index_.end()) return std::nullopt;
    return it->second;
}

const ContentEdge& SocialGraph::content_edge(EdgeId e) const {
    if (e >= content_edges_.size()) {
        throw UsageError("content edge id " + std::to_string(e) + " out of range");
    }
    return content_edges_[e];
}

std::span<const EdgeId> SocialGraph::incident_content_edges(UserIndex u) const {
    if (u >= incidence_.size()) throw UsageError("user index out of range");
    return incidence_[u];
}

std::span<const EdgeId> SocialGraph::adjacent_content_edges(EdgeId e) const {
    if (e >= adjacency_.size()) {
        throw UsageError("content edge id " + std::to_string(e) + " out of range");
    }
    return adjacency_[e];
}

void SocialGraph::set_vector(EdgeId e, TermVector v) {
    if (e >= content_edges_.size()) throw UsageError("content edge id out of range");
    content_edges_[e].vector = std::move(v);
}

SocialGraph build_graph(std::span<const PostRecord> records) {
    return SocialGraph::build(records);
}

std::vector<EdgeId> adjacent_content_edges(const SocialGraph& g, EdgeId e) {
    auto span = g.adjacent_content_edges(e);
    return {span.begin(), span.end()};
}

}  // namespace forage
