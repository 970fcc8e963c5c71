#include "forage/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "forage/error.hpp"

namespace forage {

AcsEngine::AcsEngine(const SocialGraph& g, const TermVector& interests, const AcsParams& params)
    : graph_(&g), params_(params), ctx_(g, interests) {
    const std::size_t m = g.content_edge_count();
    if (m == 0) throw UsageError("cannot forage an empty graph");
    if (params.rho <= 0.0 || params.rho > 1.0) throw UsageError("rho must be in (0, 1]");
    if (params.q0 < 0.0 || params.q0 > 1.0) throw UsageError("q0 must be in [0, 1]");
    if (params.n_ants < 1) throw UsageError("the colony needs at least one ant");
    tau0_ = 1.0 / static_cast<double>(m);
    pheromone_.assign(m, tau0_);
}

SurfingPath AcsEngine::walk_ant(Rng& rng) const {
    SurfingPath path;
    EdgeId current = static_cast<EdgeId>(uniform_int(rng, 0, ctx_.m() - 1));
    path.edges.push_back(current);
    path.similarities.push_back(ctx_.sim(current));

    std::vector<std::pair<EdgeId, double>> candidates;
    while (params_.max_path_depth <= 0 || path.depth() < params_.max_path_depth) {
        candidates.clear();
        double total = 0.0;
        const double current_sim = ctx_.sim(current);
        for (const EdgeId n : ctx_.neighbors(current)) {
            const double scent = ctx_.sim(n) - current_sim;
            if (scent <= 0.0) continue;
            if (std::find(path.edges.begin(), path.edges.end(), n) != path.edges.end()) continue;
            const double w = std::pow(pheromone_[n], params_.alpha) * std::pow(scent, params_.beta);
            candidates.emplace_back(n, w);
            total += w;
        }
        if (candidates.empty() || total <= 0.0) break;

        EdgeId next;
        if (uniform01(rng) < params_.q0) {
            // Exploitation: the most desirable candidate.
            next = candidates.front().first;
            double best = candidates.front().second;
            for (const auto& [edge, w] : candidates) {
                if (w > best) {
                    best = w;
                    next = edge;
                }
            }
        } else {
            const double u = uniform01(rng) * total;
            double acc = 0.0;
            next = candidates.back().first;
            for (const auto& [edge, w] : candidates) {
                acc += w;
                if (u < acc) {
                    next = edge;
                    break;
                }
            }
        }
        current = next;
        path.edges.push_back(current);
        path.similarities.push_back(ctx_.sim(current));
    }
    path.fitness = path.similarities.back();
    return path;
}

void AcsEngine::run_generation() {
    ++generation_;
    std::vector<SurfingPath> paths;
    paths.reserve(static_cast<std::size_t>(params_.n_ants));
    for (int a = 0; a < params_.n_ants; ++a) {
        Rng ant_rng(derive_seed(params_.seed, 0xac51, static_cast<std::uint64_t>(generation_),
                                static_cast<std::uint64_t>(a)));
        paths.push_back(walk_ant(ant_rng));
    }

    // Barrier updates: local decay per visit, in ant order.
    for (const SurfingPath& p : paths) {
        for (const EdgeId e : p.edges) {
            pheromone_[e] = (1.0 - params_.rho) * pheromone_[e] + params_.rho * tau0_;
        }
    }

    const SurfingPath* gen_best = &paths.front();
    for (const SurfingPath& p : paths) {
        if (p.fitness > gen_best->fitness) gen_best = &p;
    }
    collector_.add(*gen_best);
    if (gen_best->fitness > best_fitness_) {
        best_fitness_ = gen_best->fitness;
        best_path_ = *gen_best;
    }
    // Global deposit on the best path found so far.
    for (const EdgeId e : best_path_.edges) {
        pheromone_[e] = (1.0 - params_.rho) * pheromone_[e] + params_.rho * best_fitness_;
    }
    collector_.close_generation();
}

RankedPaths AcsEngine::finish() const { return collector_.finish(); }

RankedPaths run_acsif(const SocialGraph& g, const TermVector& interests, const AcsParams& params) {
    AcsEngine engine(g, interests, params);
    for (int gen = 0; gen < params.n_generations; ++gen) engine.run_generation();
    return engine.finish();
}

RankedPaths run_acsif(const SocialGraph& g, const Vocabulary& vocab,
                      const InterestVector& interests, const AcsParams& params) {
    return run_acsif(g, interests.project(vocab), params);
}

PsoEngine::PsoEngine(const SocialGraph& g, const TermVector& interests, const PsoParams& params,
                     const Clustering* clustering)
    : graph_(&g), params_(params), ctx_(g, interests) {
    if (g.content_edge_count() == 0) throw UsageError("cannot forage an empty graph");
    if (params.n_particles < 1) throw UsageError("the swarm needs at least one particle");
    ctx_.use_positions(clustering);

    Rng init_rng(derive_seed(params.seed, 0x9501));
    particles_.resize(static_cast<std::size_t>(params.n_particles));
    for (Particle& p : particles_) {
        p.position = static_cast<int>(uniform_int(init_rng, 1, ctx_.m()));
        p.pbest_position = p.position;
    }
    gbest_position_ = particles_.empty() ? 1 : particles_.front().position;
}

void PsoEngine::run_generation() {
    ++generation_;
    const int m = ctx_.m();

    const SurfingPath* gen_best = nullptr;
    std::vector<SurfingPath> paths(particles_.size());
    for (std::size_t i = 0; i < particles_.size(); ++i) {
        Rng prng(derive_seed(params_.seed, 0x9502, static_cast<std::uint64_t>(generation_),
                             static_cast<std::uint64_t>(i)));
        Particle& p = particles_[i];
        paths[i] = build_surfing_path(ctx_, p.position, prng, params_.max_path_depth);
        p.fitness = paths[i].fitness;
        if (p.fitness > p.pbest_fitness) {
            p.pbest_fitness = p.fitness;
            p.pbest_position = p.position;
        }
        if (!gen_best || p.fitness > gen_best->fitness) gen_best = &paths[i];
    }

    // gbest at the barrier, scan order fixed.
    for (const Particle& p : particles_) {
        if (p.pbest_fitness > gbest_fitness_) {
            gbest_fitness_ = p.pbest_fitness;
            gbest_position_ = p.pbest_position;
        }
    }
    if (gen_best) collector_.add(*gen_best);

    for (std::size_t i = 0; i < particles_.size(); ++i) {
        Rng prng(derive_seed(params_.seed, 0x9503, static_cast<std::uint64_t>(generation_),
                             static_cast<std::uint64_t>(i)));
        Particle& p = particles_[i];
        const double r1 = uniform01(prng);
        const double r2 = uniform01(prng);
        p.velocity = params_.inertia * p.velocity +
                     params_.c1 * r1 * (p.pbest_position - p.position) +
                     params_.c2 * r2 * (gbest_position_ - p.position);
        const int next = static_cast<int>(std::floor(p.position + p.velocity + 0.5));
        p.position = std::clamp(next, 1, m);
    }
    collector_.close_generation();
}

RankedPaths PsoEngine::finish() const { return collector_.finish(); }

RankedPaths run_psoif(const SocialGraph& g, const TermVector& interests, const PsoParams& params,
                      const Clustering* clustering) {
    PsoEngine engine(g, interests, params, clustering);
    for (int gen = 0; gen < params.n_generations; ++gen) engine.run_generation();
    return engine.finish();
}

RankedPaths run_psoif(const SocialGraph& g, const Vocabulary& vocab,
                      const InterestVector& interests, const PsoParams& params,
                      const Clustering* clustering) {
    return run_psoif(g, interests.project(vocab), params, clustering);
}

}  // namespace forage
