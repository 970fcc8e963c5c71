#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "forage/clustering.hpp"
#include "forage/eho.hpp"
#include "forage/foraging.hpp"

namespace forage {

enum class ExplorationWeighting {
    Direct,   // as printed: territory probability proportional to d(I, m_j)
    Inverse,  // 1 / d(I, m_j), normalized
};

struct EeholsifParams {
    double alpha = 0.5;
    double beta = 0.5;
    int n_clans = 5;
    int n_per_clan = 50;
    int max_generations = 25;
    double q0 = 0.75;
    int t0 = 6;
    int k = 55;             // territory count when the harness has to build a clustering
    int dist_elephant = 0;  // 0 -> max(1, territory width / 10)
    std::uint64_t seed = 0;
    bool separating_enabled = true;
    MatriarchUpdate matriarch_update = MatriarchUpdate::PaperLiteral;
    ExplorationWeighting exploration_weighting = ExplorationWeighting::Direct;
    int max_path_depth = 0;
};

struct ClanState {
    Clan clan;
    int territory = 0;
    int stagnation = 0;  // g_{c_i}; always < t0 at the end of a generation
};

// Distances d(I, m_j) between the interests and each real territory's
// centroid post, indexed by cluster id.
std::vector<double> territory_distances(const SocialGraph& g, const Clustering& clustering,
                                        const TermVector& interests);

// Territory choice for one clan: exploit (argmin distance) with
// probability q0, otherwise sample by the configured weighting.
int choose_territory(std::span<const double> distances, double q0, ExplorationWeighting weighting,
                     Rng& rng);

// Places every clan inside a chosen territory's position range,
// members within dist_elephant of the clan seed, all positions
// distinct across the population.
std::vector<ClanState> place_clans(const TermVector& interests, const SocialGraph& g,
                                   const Clustering& clustering, const EeholsifParams& params,
                                   Rng& rng);

// Relocates a stagnant clan to a uniformly chosen different territory
// and resets its counter. With a single territory it only resets the
// counter. The clan's best solution is retained.
void migrate_clan(ClanState& state, const Clustering& clustering, const EeholsifParams& params,
                  Rng& rng);

using ClanStateObserver = std::function<void(int generation, std::span<const ClanState> clans)>;

// The large-scale engine: territory-aware placement over semantic
// positions, stagnation counters and clan migration around the adapted
// herding operators.
RankedPaths run_eeholsif(const SocialGraph& g, const TermVector& interests,
                         const Clustering& clustering, const EeholsifParams& params,
                         const ClanStateObserver& observer = {});
RankedPaths run_eeholsif(const SocialGraph& g, const Vocabulary& vocab,
                         const InterestVector& interests, const Clustering& clustering,
                         const EeholsifParams& params, const ClanStateObserver& observer = {});

}  // namespace forage
