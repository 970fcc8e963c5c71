#include "forage/clustering.hpp"

#include <algorithm>
#include <fstream>
#include <limits>

#include "json.hpp"

#include "forage/error.hpp"

namespace forage {
namespace {

std::vector<EdgeId> eligible_edges(const SocialGraph& g) {
    std::vector<EdgeId> out;
    for (const ContentEdge& e : g.content_edges()) {
        if (!e.vector.empty()) out.push_back(e.id);
    }
    return out;
}

void rebuild_territories(const SocialGraph& g, Clustering& c,
                         std::span<const EdgeId> centroids) {
    c.territories.assign(static_cast<std::size_t>(c.k), {});
    for (int j = 0; j < c.k; ++j) {
        c.territories[static_cast<std::size_t>(j)].cluster_id = j;
        c.territories[static_cast<std::size_t>(j)].centroid_edge = centroids[static_cast<std::size_t>(j)];
    }
    Territory overflow;
    overflow.cluster_id = c.k;
    for (EdgeId e = 0; e < g.content_edge_count(); ++e) {
        const int a = c.assignment[e];
        if (a < 0) {
            overflow.members.push_back(e);
        } else {
            c.territories[static_cast<std::size_t>(a)].members.push_back(e);
        }
    }
    c.has_overflow = !overflow.members.empty();
    if (c.has_overflow) {
        // Assignment indices: real clusters 0..k-1, overflow = k.
        for (const EdgeId e : overflow.members) c.assignment[e] = c.k;
        overflow.centroid_edge = overflow.members.front();
        c.territories.push_back(std::move(overflow));
    }
}

}  // namespace

std::vector<EdgeId> init_centroids(const SocialGraph& g, int k, Rng& rng) {
    std::vector<EdgeId> pool = eligible_edges(g);
    if (k < 1) throw UsageError("k must be at least 1");
    if (static_cast<std::size_t>(k) > pool.size()) {
        throw UsageError("k = " + std::to_string(k) + " exceeds the " +
                         std::to_string(pool.size()) + " posts with non-empty vectors");
    }
    // Partial Fisher-Yates: k uniform draws without replacement.
    std::vector<EdgeId> centroids;
    centroids.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const auto pick = static_cast<std::size_t>(
            uniform_int(rng, static_cast<std::int64_t>(i), static_cast<std::int64_t>(pool.size()) - 1));
        std::swap(pool[static_cast<std::size_t>(i)], pool[pick]);
        centroids.push_back(pool[static_cast<std::size_t>(i)]);
    }
    return centroids;
}

std::vector<int> assign_clusters(const SocialGraph& g, std::span<const EdgeId> centroids) {
    if (centroids.empty()) throw UsageError("assign_clusters needs at least one centroid");
    std::vector<int> assignment(g.content_edge_count(), -1);
    for (const ContentEdge& e : g.content_edges()) {
        if (e.vector.empty()) continue;
        double best = std::numeric_limits<double>::infinity();
        int best_cluster = -1;
        for (std::size_t j = 0; j < centroids.size(); ++j) {
            const double d = euclidean_distance(e.vector, g.content_edge(centroids[j]).vector);
            if (d < best) {
                best = d;
                best_cluster = static_cast<int>(j);
            }
        }
        assignment[e.id] = best_cluster;
    }
    return assignment;
}

TermVector cluster_mean(const SocialGraph& g, std::span<const EdgeId> members) {
    VectorAccumulator acc;
    for (const EdgeId e : members) acc.add(g.content_edge(e).vector);
    return acc.mean();
}

EdgeId update_centroid(const SocialGraph& g, std::span<const EdgeId> members) {
    if (members.empty()) throw UsageError("update_centroid on an empty cluster");
    const TermVector mean = cluster_mean(g, members);
    double best = std::numeric_limits<double>::infinity();
    EdgeId best_edge = members.front();
    for (const EdgeId e : members) {
        const double d = euclidean_distance(g.content_edge(e).vector, mean);
        if (d < best || (d == best && e < best_edge)) {
            best = d;
            best_edge = e;
        }
    }
    return best_edge;
}

Clustering run_kmeans(const SocialGraph& g, int k, const KmeansOptions& options, Rng& rng) {
    std::vector<EdgeId> centroids = init_centroids(g, k, rng);

    Clustering c;
    c.k = k;
    c.assignment = assign_clusters(g, centroids);

    // Members per cluster, rebuilt after every assignment pass.
    auto collect = [&](const std::vector<int>& assignment) {
        std::vector<std::vector<EdgeId>> members(static_cast<std::size_t>(k));
        for (EdgeId e = 0; e < assignment.size(); ++e) {
            if (assignment[e] >= 0) members[static_cast<std::size_t>(assignment[e])].push_back(e);
        }
        return members;
    };

    // An assignment pass can drain a cluster; re-seed it with the edge of
    // the largest cluster that sits farthest from that cluster's centroid.
    auto repair_empty = [&](std::vector<std::vector<EdgeId>>& members) {
        for (std::size_t j = 0; j < members.size(); ++j) {
            if (!members[j].empty()) continue;
            std::size_t donor = 0;
            for (std::size_t l = 1; l < members.size(); ++l) {
                if (members[l].size() > members[donor].size()) donor = l;
            }
            if (members[donor].size() < 2) continue;  // nothing to split
            const TermVector& donor_centroid = g.content_edge(centroids[donor]).vector;
            double far = -1.0;
            std::size_t far_idx = 0;
            for (std::size_t idx = 0; idx < members[donor].size(); ++idx) {
                const double d =
                    euclidean_distance(g.content_edge(members[donor][idx]).vector, donor_centroid);
                if (d > far) {
                    far = d;
                    far_idx = idx;
                }
            }
            const EdgeId moved = members[donor][far_idx];
            members[donor].erase(members[donor].begin() + static_cast<std::ptrdiff_t>(far_idx));
            members[j].push_back(moved);
            centroids[j] = moved;
            c.assignment[moved] = static_cast<int>(j);
        }
    };

    auto members = collect(c.assignment);
    repair_empty(members);

    c.converged = false;
    for (c.iterations = 0; c.iterations < options.max_iterations; ) {
        for (std::size_t j = 0; j < members.size(); ++j) {
            if (!members[j].empty()) centroids[j] = update_centroid(g, members[j]);
        }
        std::vector<int> next = assign_clusters(g, centroids);
        ++c.iterations;
        if (next == c.assignment) {
            c.converged = true;
            break;
        }
        c.assignment = std::move(next);
        members = collect(c.assignment);
        repair_empty(members);
    }

    rebuild_territories(g, c, centroids);
    return c;
}

double wss(const SocialGraph& g, const Clustering& clustering, bool squared) {
    double total = 0.0;
    for (int j = 0; j < clustering.k; ++j) {
        const Territory& t = clustering.territories[static_cast<std::size_t>(j)];
        const TermVector& centroid = g.content_edge(t.centroid_edge).vector;
        for (const EdgeId e : t.members) {
            const double d = euclidean_distance(g.content_edge(e).vector, centroid);
            total += squared ? d * d : d;
        }
    }
    return total;
}

std::vector<std::pair<int, double>> scan_k(const SocialGraph& g, std::span<const int> k_values,
                                           const KmeansOptions& options, Rng& rng) {
    if (k_values.empty()) throw UsageError("scan_k needs at least one k");
    std::vector<std::pair<int, double>> out;
    out.reserve(k_values.size());
    for (const int k : k_values) {
        const Clustering c = run_kmeans(g, k, options, rng);
        out.emplace_back(k, wss(g, c, options.wss_squared));
    }
    return out;
}

void assign_semantic_positions(const SocialGraph& g, Clustering& clustering) {
    const std::size_t m = g.content_edge_count();
    clustering.position_of.assign(m, 0);
    clustering.edge_at.assign(m, 0);

    int next = 1;
    for (Territory& t : clustering.territories) {
        std::vector<std::pair<double, EdgeId>> order;
        order.reserve(t.members.size());
        const bool is_overflow = clustering.has_overflow && t.cluster_id == clustering.k;
        const TermVector& centroid = g.content_edge(t.centroid_edge).vector;
        for (const EdgeId e : t.members) {
            const double d =
                is_overflow ? 0.0 : euclidean_distance(g.content_edge(e).vector, centroid);
            order.emplace_back(d, e);
        }
        std::sort(order.begin(), order.end());
        t.lo = next;
        for (const auto& [_, e] : order) {
            clustering.position_of[e] = next;
            clustering.edge_at[static_cast<std::size_t>(next - 1)] = e;
            ++next;
        }
        t.hi = next - 1;
    }
}

void save_clustering(const Clustering& clustering, const std::filesystem::path& path,
                     std::uint64_t corpus_digest) {
    nlohmann::json doc;
    doc["format"] = "forage-clustering";
    doc["version"] = 1;
    doc["k"] = clustering.k;
    doc["has_overflow"] = clustering.has_overflow;
    doc["converged"] = clustering.converged;
    doc["iterations"] = clustering.iterations;
    doc["seed"] = clustering.seed;
    doc["corpus_digest"] = corpus_digest;
    doc["assignment"] = clustering.assignment;
    doc["position_of"] = clustering.position_of;
    std::vector<EdgeId> centroids;
    for (const Territory& t : clustering.territories) centroids.push_back(t.centroid_edge);
    doc["centroids"] = centroids;

    std::ofstream out(path);
    if (!out) throw DataError("cannot write clustering snapshot: " + path.string());
    out << doc.dump() << '\n';
}

Clustering load_clustering(const std::filesystem::path& path, const SocialGraph& g,
                           std::uint64_t corpus_digest) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open clustering snapshot: " + path.string());
    nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
    if (doc.is_discarded() || doc.value("format", "") != "forage-clustering") {
        throw DataError("not a clustering snapshot: " + path.string());
    }
    if (doc.value("version", 0) != 1) {
        throw DataError("unsupported clustering snapshot version in " + path.string());
    }
    if (doc.value("corpus_digest", std::uint64_t{0}) != corpus_digest) {
        throw DataError("clustering snapshot was built from a different corpus: " + path.string());
    }

    Clustering c;
    c.k = doc.at("k").get<int>();
    c.has_overflow = doc.value("has_overflow", false);
    c.converged = doc.value("converged", false);
    c.iterations = doc.value("iterations", 0);
    c.seed = doc.value("seed", std::uint64_t{0});
    c.assignment = doc.at("assignment").get<std::vector<int>>();
    c.position_of = doc.at("position_of").get<std::vector<int>>();
    const auto centroids = doc.at("centroids").get<std::vector<EdgeId>>();

    if (c.assignment.size() != g.content_edge_count() ||
        c.position_of.size() != g.content_edge_count()) {
        throw DataError("clustering snapshot does not match the corpus size");
    }

    const int n_territories = c.k + (c.has_overflow ? 1 : 0);
    if (centroids.size() != static_cast<std::size_t>(n_territories)) {
        throw DataError("clustering snapshot has a corrupt centroid list");
    }
    c.territories.assign(static_cast<std::size_t>(n_territories), {});
    for (int j = 0; j < n_territories; ++j) {
        c.territories[static_cast<std::size_t>(j)].cluster_id = j;
        c.territories[static_cast<std::size_t>(j)].centroid_edge = centroids[static_cast<std::size_t>(j)];
    }
    for (EdgeId e = 0; e < c.assignment.size(); ++e) {
        const int a = c.assignment[e];
        if (a < 0 || a >= n_territories) throw DataError("clustering snapshot has a corrupt assignment");
        c.territories[static_cast<std::size_t>(a)].members.push_back(e);
    }

    // Rebuild edge_at and the per-territory ranges from the positions.
    c.edge_at.assign(c.position_of.size(), 0);
    std::vector<bool> seen(c.position_of.size(), false);
    for (EdgeId e = 0; e < c.position_of.size(); ++e) {
        const int pos = c.position_of[e];
        if (pos < 1 || static_cast<std::size_t>(pos) > c.position_of.size() ||
            seen[static_cast<std::size_t>(pos - 1)]) {
            throw DataError("clustering snapshot positions are not a bijection");
        }
        seen[static_cast<std::size_t>(pos - 1)] = true;
        c.edge_at[static_cast<std::size_t>(pos - 1)] = e;
    }
    for (Territory& t : c.territories) {
        t.lo = std::numeric_limits<int>::max();
        t.hi = std::numeric_limits<int>::min();
        for (const EdgeId e : t.members) {
            t.lo = std::min(t.lo, c.position_of[e]);
            t.hi = std::max(t.hi, c.position_of[e]);
        }
        if (t.members.empty()) t.lo = 0, t.hi = -1;
    }
    return c;
}

std::vector<std::pair<int, int>> neighbor_territories(const SocialGraph& g,
                                                      const Clustering& clustering) {
    std::vector<std::pair<int, int>> pairs;
    for (EdgeId e = 0; e < g.content_edge_count(); ++e) {
        const int a = clustering.assignment[e];
        for (const EdgeId n : g.adjacent_content_edges(e)) {
            const int b = clustering.assignment[n];
            if (a != b) pairs.emplace_back(std::min(a, b), std::max(a, b));
        }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

}  // namespace forage
