#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "forage/foraging.hpp"
#include "forage/graph.hpp"
#include "forage/rng.hpp"
#include "forage/text.hpp"

namespace forage {

struct PositionBounds {
    int min_pos = 1;
    int max_pos = 1;
};

struct Elephant {
    int position = 1;
    SurfingPath path;  // empty until evaluated
    double fitness = 0.0;
};

struct Clan {
    std::vector<Elephant> members;
    int matriarch = 0;            // argmax fitness, ties to the lowest index
    SurfingPath best_path;        // best solution found so far
    double best_fitness = -1.0;

    std::size_t size() const { return members.size(); }
};

enum class MatriarchUpdate {
    PaperLiteral,  // x_best <- round(x_avg * beta)
    Convex,        // x_best <- round(x_best + beta * (x_avg - x_best))
};

struct EhoParams {
    double alpha = 0.9;
    double beta = 0.4;
    int n_clans = 8;
    int n_per_clan = 90;
    int max_generations = 40;
    int dist_clan = 0;      // 0 -> m / (2 * n_clans)
    int dist_elephant = 0;  // 0 -> m / (10 * n_clans)
    std::uint64_t seed = 0;
    bool separating_enabled = true;  // test-harness switch
    MatriarchUpdate matriarch_update = MatriarchUpdate::PaperLiteral;
    int max_path_depth = 0;  // 0 = unbounded
};

// Operator cores, split out so the stochastic draw is an argument.
int round_half_up_clamp(double x, PositionBounds bounds);
int position_update_step(int x, int x_best, double alpha, double r, PositionBounds bounds);
int matriarch_position(int x_avg, int x_best, double beta, PositionBounds bounds,
                       MatriarchUpdate mode);
int separating_position(PositionBounds bounds, double r);

// Position of the member whose fitness is closest to the clan's average
// fitness (ties to the lowest member index). Fitnesses must be current.
int closest_to_average_position(const Clan& clan);

// Index of the best / worst member by fitness, ties to the lowest index.
int best_member(const Clan& clan);
int worst_member(const Clan& clan);

// Population over raw positions: clan seeds pairwise >= dist_clan
// apart, members within dist_elephant of their seed, all positions
// distinct. Throws UsageError naming the constraint it cannot satisfy.
std::vector<Clan> init_population(const EhoParams& params, int m, Rng& rng);

// One draw of r per non-matriarch elephant.
void update_positions(Clan& clan, const EhoParams& params, PositionBounds bounds, Rng& rng);
void update_matriarch(Clan& clan, const EhoParams& params, PositionBounds bounds);
void separate_worst(Clan& clan, PositionBounds bounds, Rng& rng);

using GenerationObserver = std::function<void(int generation, std::span<const Clan> clans)>;

// The adapted elephant-herding search over raw edge positions:
// every elephant builds a surfing path from its position each
// generation, then the update / matriarch / separating operators run.
RankedPaths run_ehoif(const SocialGraph& g, const TermVector& interests, const EhoParams& params,
                      const GenerationObserver& observer = {});
RankedPaths run_ehoif(const SocialGraph& g, const Vocabulary& vocab, const InterestVector& interests,
                      const EhoParams& params, const GenerationObserver& observer = {});

}  // namespace forage
