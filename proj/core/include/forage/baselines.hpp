#pragma once

#include <cstdint>
#include <vector>

#include "forage/clustering.hpp"
#include "forage/foraging.hpp"
#include "forage/graph.hpp"
#include "forage/rng.hpp"
#include "forage/term_vector.hpp"
#include "forage/text.hpp"

namespace forage {

struct AcsParams {
    double alpha = 0.2;
    double beta = 0.4;
    double rho = 0.8;
    double q0 = 0.8;
    int n_ants = 50;
    int n_generations = 50;
    std::uint64_t seed = 0;
    int max_path_depth = 0;
};

struct PsoParams {
    double c1 = 1.5;
    double c2 = 0.4;
    double inertia = 0.7;
    int n_particles = 600;
    int n_generations = 90;
    std::uint64_t seed = 0;
    int max_path_depth = 0;
};

// Ant colony system over the content-sharing edges: pheromone-weighted
// scent desirability tau^alpha * scent^beta, a pseudo-random
// proportional step rule with q0, per-visit local decay toward tau0 and
// a best-path deposit, both applied at the generation barrier.
class AcsEngine {
public:
    AcsEngine(const SocialGraph& g, const TermVector& interests, const AcsParams& params);

    void run_generation();
    RankedPaths finish() const;

    double tau0() const { return tau0_; }
    double pheromone(EdgeId e) const { return pheromone_[e]; }
    const SurfingPath& best_path() const { return best_path_; }
    int generation() const { return generation_; }

private:
    SurfingPath walk_ant(Rng& rng) const;

    const SocialGraph* graph_;
    AcsParams params_;
    ForagingContext ctx_;
    std::vector<double> pheromone_;
    double tau0_;
    SurfingPath best_path_;
    double best_fitness_ = -1.0;
    int generation_ = 0;
    PathCollector collector_;
};

RankedPaths run_acsif(const SocialGraph& g, const TermVector& interests, const AcsParams& params);
RankedPaths run_acsif(const SocialGraph& g, const Vocabulary& vocab, const InterestVector& interests,
                      const AcsParams& params);

// Particle swarm over the integer position space (semantic positions
// when a clustering is supplied, raw edge order otherwise). Positions
// seed surfing-path construction; velocities follow the standard
// pbest/gbest update, rounded and clamped to [1, m].
class PsoEngine {
public:
    struct Particle {
        int position = 1;
        double velocity = 0.0;
        int pbest_position = 1;
        double pbest_fitness = -1.0;
        double fitness = 0.0;
    };

    PsoEngine(const SocialGraph& g, const TermVector& interests, const PsoParams& params,
              const Clustering* clustering = nullptr);

    void run_generation();
    RankedPaths finish() const;

    const std::vector<Particle>& particles() const { return particles_; }
    int gbest_position() const { return gbest_position_; }
    double gbest_fitness() const { return gbest_fitness_; }
    int generation() const { return generation_; }

private:
    const SocialGraph* graph_;
    PsoParams params_;
    ForagingContext ctx_;
    std::vector<Particle> particles_;
    int gbest_position_ = 1;
    double gbest_fitness_ = -1.0;
    int generation_ = 0;
    PathCollector collector_;
};

RankedPaths run_psoif(const SocialGraph& g, const TermVector& interests, const PsoParams& params,
                      const Clustering* clustering = nullptr);
RankedPaths run_psoif(const SocialGraph& g, const Vocabulary& vocab, const InterestVector& interests,
                      const PsoParams& params, const Clustering* clustering = nullptr);

}  // namespace forage
