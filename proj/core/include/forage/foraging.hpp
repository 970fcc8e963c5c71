#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "forage/clustering.hpp"
#include "forage/graph.hpp"
#include "forage/rng.hpp"
#include "forage/term_vector.hpp"
#include "forage/text.hpp"

namespace forage {

// An ordered chain of content edges with strictly increasing interest
// similarity. Fitness is the similarity of the last edge.
struct SurfingPath {
    std::vector<EdgeId> edges;
    std::vector<double> similarities;
    double fitness = 0.0;

    bool empty() const { return edges.empty(); }
    int depth() const { return static_cast<int>(edges.size()); }
    EdgeId terminal_edge() const { return edges.back(); }
};

// Per-query precomputation shared by every engine: interest
// similarities for all edges plus the integer-position to edge mapping
// (raw input order by default, semantic order when a clustering is
// attached). Immutable once built.
class ForagingContext {
public:
    ForagingContext(const SocialGraph& g, const TermVector& interests);

    // Semantic positions; the clustering must outlive the context.
    void use_positions(const Clustering* clustering);

    const SocialGraph& graph() const { return *graph_; }
    int m() const { return static_cast<int>(sims_.size()); }
    double sim(EdgeId e) const { return sims_[e]; }
    std::span<const EdgeId> neighbors(EdgeId e) const { return graph_->adjacent_content_edges(e); }

    // Throws UsageError unless position is in [1, m].
    EdgeId edge_at_position(int position) const;

private:
    const SocialGraph* graph_;
    std::vector<double> sims_;
    const Clustering* clustering_ = nullptr;
};

// Similarity evolution from the current post to a candidate; may be
// negative.
double info_scent(const ForagingContext& ctx, EdgeId current, EdgeId candidate);
double info_scent(const ContentEdge& current, const ContentEdge& candidate,
                  const TermVector& interests);

// Surfing decision rule: candidates with non-positive scent get zero;
// positive scents are normalized over the positive subset. Empty result
// means the path terminates. Entries are ordered by edge id.
std::vector<std::pair<EdgeId, double>> selection_probabilities(const ForagingContext& ctx,
                                                               EdgeId current,
                                                               std::span<const EdgeId> neighbors);

// Builds one surfing path: start at the edge behind `start_position`,
// then repeatedly sample the next edge by the decision rule until no
// positive-scent neighbor remains. Each accepted edge strictly improves
// the interest similarity, which also guarantees termination.
// max_depth = 0 means unbounded.
SurfingPath build_surfing_path(const ForagingContext& ctx, int start_position, Rng& rng,
                               int max_depth = 0);

// Fitness of a path: interest similarity of its last edge. Throws
// UsageError on an empty path.
double path_fitness(const SurfingPath& path);

// Engine output: paths sorted by fitness (descending, ties by terminal
// edge id), deduplicated by terminal edge, plus the best-so-far curve.
struct RankedPaths {
    std::vector<SurfingPath> paths;
    std::vector<double> best_fitness_curve;  // best-so-far per generation
    int generations = 0;
    int convergence_generation = 0;  // first generation that reached the final best

    struct Migration {
        int generation = 0;
        int clan = 0;
        int from_territory = 0;
        int to_territory = 0;
        int counter_at_fire = 0;
    };
    std::vector<Migration> migrations;       // EEHOLSIF only
    std::vector<int> final_stagnation;       // EEHOLSIF only
};

// Shared by every engine: append a generation's best paths, then rank.
class PathCollector {
public:
    void add(const SurfingPath& path);
    void close_generation();
    RankedPaths finish() const;
    double best_so_far() const { return best_so_far_; }

private:
    std::vector<SurfingPath> collected_;
    std::vector<double> curve_;
    double best_so_far_ = -1.0;
};

}  // namespace forage
