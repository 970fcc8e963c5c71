#include "forage/foraging.hpp"

#include <algorithm>
#include <unordered_set>

#include "forage/error.hpp"

namespace forage {

ForagingContext::ForagingContext(const SocialGraph& g, const TermVector& interests)
    : graph_(&g) {
    sims_.resize(g.content_edge_count());
    for (const ContentEdge& e : g.content_edges()) {
        sims_[e.id] = cosine_similarity(e.vector, interests);
    }
}

void ForagingContext::use_positions(const Clustering* clustering) {
    if (clustering && !clustering->has_positions()) {
        throw UsageError("clustering has no semantic positions assigned");
    }
    if (clustering && clustering->edge_count() != sims_.size()) {
        throw UsageError("clustering does not match the graph");
    }
    clustering_ = clustering;
}

EdgeId ForagingContext::edge_at_position(int position) const {
    if (position < 1 || position > m()) {
        throw UsageError("position " + std::to_string(position) + " outside [1, " +
                         std::to_string(m()) + "]");
    }
    if (clustering_) return clustering_->edge_at[static_cast<std::size_t>(position - 1)];
    return static_cast<EdgeId>(position - 1);
}

double info_scent(const ForagingContext& ctx, EdgeId current, EdgeId candidate) {
    return ctx.sim(candidate) - ctx.sim(current);
}

double info_scent(const ContentEdge& current, const ContentEdge& candidate,
                  const TermVector& interests) {
    return cosine_similarity(candidate.vector, interests) -
           cosine_similarity(current.vector, interests);
}

std::vector<std::pair<EdgeId, double>> selection_probabilities(const ForagingContext& ctx,
                                                               EdgeId current,
                                                               std::span<const EdgeId> neighbors) {
    std::vector<std::pair<EdgeId, double>> positive;
    double total = 0.0;
    for (const EdgeId n : neighbors) {
        const double scent = info_scent(ctx, current, n);
        if (scent > 0.0) {
            positive.emplace_back(n, scent);
            total += scent;
        }
    }
    for (auto& [_, p] : positive) p /= total;
    return positive;
}

SurfingPath build_surfing_path(const ForagingContext& ctx, int start_position, Rng& rng,
                               int max_depth) {
    SurfingPath path;
    EdgeId current = ctx.edge_at_position(start_position);
    path.edges.push_back(current);
    path.similarities.push_back(ctx.sim(current));

    std::vector<std::pair<EdgeId, double>> candidates;
    while (max_depth <= 0 || path.depth() < max_depth) {
        candidates.clear();
        double total = 0.0;
        const double current_sim = ctx.sim(current);
        for (const EdgeId n : ctx.neighbors(current)) {
            const double scent = ctx.sim(n) - current_sim;
            if (scent <= 0.0) continue;
            // Strict improvement makes revisits impossible; the check
            // guards the floating-point tie corner anyway.
            if (std::find(path.edges.begin(), path.edges.end(), n) != path.edges.end()) continue;
            candidates.emplace_back(n, scent);
            total += scent;
        }
        if (candidates.empty()) break;

        // Inverse-CDF sample over the normalized scents.
        const double u = uniform01(rng) * total;
        double acc = 0.0;
        EdgeId next = candidates.back().first;
        for (const auto& [edge, scent] : candidates) {
            acc += scent;
            if (u < acc) {
                next = edge;
                break;
            }
        }
        current = next;
        path.edges.push_back(current);
        path.similarities.push_back(ctx.sim(current));
    }

    path.fitness = path.similarities.back();
    return path;
}

double path_fitness(const SurfingPath& path) {
    if (path.empty()) throw UsageError("fitness of an empty surfing path");
    return path.similarities.back();
}

void PathCollector::add(const SurfingPath& path) {
    collected_.push_back(path);
    if (path.fitness > best_so_far_) best_so_far_ = path.fitness;
}

void PathCollector::close_generation() {
    curve_.push_back(best_so_far_);
}

RankedPaths PathCollector::finish() const {
    RankedPaths out;
    out.best_fitness_curve = curve_;
    out.generations = static_cast<int>(curve_.size());

    // First generation whose best-so-far equals the final one.
    out.convergence_generation = 0;
    if (!curve_.empty()) {
        const double final_best = curve_.back();
        for (std::size_t i = 0; i < curve_.size(); ++i) {
            if (curve_[i] >= final_best) {
                out.convergence_generation = static_cast<int>(i) + 1;
                break;
            }
        }
    }

    // Deduplicate by terminal edge (fitness is a function of the
    // terminal edge, so the first occurrence wins), then rank.
    std::unordered_set<EdgeId> seen;
    for (const SurfingPath& p : collected_) {
        if (p.empty()) continue;
        if (seen.insert(p.terminal_edge()).second) out.paths.push_back(p);
    }
    std::stable_sort(out.paths.begin(), out.paths.end(),
                     [](const SurfingPath& a, const SurfingPath& b) {
                         if (a.fitness != b.fitness) return a.fitness > b.fitness;
                         return a.terminal_edge() < b.terminal_edge();
                     });
    return out;
}

}  // namespace forage
