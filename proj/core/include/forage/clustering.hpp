#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "forage/graph.hpp"
#include "forage/rng.hpp"
#include "forage/term_vector.hpp"

namespace forage {

// A search territory: one k-means cluster plus its slice of the
// semantic position space.
struct Territory {
    int cluster_id = 0;
    EdgeId centroid_edge = 0;
    std::vector<EdgeId> members;
    int lo = 0, hi = -1;  // inclusive position range, empty until positions assigned

    std::size_t size() const { return members.size(); }
};

// Result of the territory definition step. `territories` holds the k
// real clusters in cluster_id order plus, when edges with empty vectors
// exist, one overflow territory appended last. Semantic positions form
// a bijection between content edges and [1, m].
struct Clustering {
    std::vector<Territory> territories;
    int k = 0;                       // number of real (clustered) territories
    bool has_overflow = false;
    bool converged = false;
    int iterations = 0;
    std::vector<int> assignment;     // edge id -> territory index (overflow = k)
    std::vector<int> position_of;    // edge id -> position in [1, m]
    std::vector<EdgeId> edge_at;     // position - 1 -> edge id
    std::uint64_t seed = 0;

    std::size_t edge_count() const { return assignment.size(); }
    bool has_positions() const { return !position_of.empty(); }
    const Territory& territory_of(EdgeId e) const { return territories[static_cast<std::size_t>(assignment[e])]; }
};

struct KmeansOptions {
    int max_iterations = 100;
    bool wss_squared = false;  // the elbow statistic sums plain distances by default
};

// k distinct edges drawn uniformly from the edges with non-empty
// vectors. Throws UsageError when k exceeds the eligible count.
std::vector<EdgeId> init_centroids(const SocialGraph& g, int k, Rng& rng);

// Nearest-centroid assignment by Euclidean distance, ties to the lowest
// cluster id. Edges with empty vectors get -1.
std::vector<int> assign_clusters(const SocialGraph& g, std::span<const EdgeId> centroids);

// Mean of the members' vectors; the new centroid is the member nearest
// to it (ties to the lowest edge id). Throws UsageError on empty input.
EdgeId update_centroid(const SocialGraph& g, std::span<const EdgeId> members);
TermVector cluster_mean(const SocialGraph& g, std::span<const EdgeId> members);

// Assign/update loop until the assignment stops changing or
// max_iterations passes; fills territories and assignment but not
// positions (see assign_semantic_positions).
Clustering run_kmeans(const SocialGraph& g, int k, const KmeansOptions& options, Rng& rng);

// Within-cluster sum of post-to-centroid distances over the k real
// territories (squared variant behind options flag).
double wss(const SocialGraph& g, const Clustering& clustering, bool squared = false);

// One k-means + WSS per k, emitted in input order.
std::vector<std::pair<int, double>> scan_k(const SocialGraph& g, std::span<const int> k_values,
                                           const KmeansOptions& options, Rng& rng);

// Lays territories out consecutively in cluster_id order; within a
// territory positions ascend with distance to the centroid (ties by
// edge id). The overflow territory comes last, ordered by edge id.
void assign_semantic_positions(const SocialGraph& g, Clustering& clustering);

// Versioned JSON snapshot so foraging runs skip re-clustering.
void save_clustering(const Clustering& clustering, const std::filesystem::path& path,
                     std::uint64_t corpus_digest);
Clustering load_clustering(const std::filesystem::path& path, const SocialGraph& g,
                           std::uint64_t corpus_digest);

// Analysis-only query: pairs of territories that share adjacent edges.
std::vector<std::pair<int, int>> neighbor_territories(const SocialGraph& g,
                                                      const Clustering& clustering);

}  // namespace forage
