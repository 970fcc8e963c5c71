#include "forage/eeholsif.hpp"

#include <algorithm>
#include <unordered_set>

#include "forage/error.hpp"

namespace forage {
namespace {

constexpr int kDrawTries = 200;

void validate(const EeholsifParams& params) {
    if (params.alpha < 0.0 || params.alpha > 1.0) throw UsageError("alpha must be in [0, 1]");
    if (params.beta < 0.0 || params.beta > 1.0) throw UsageError("beta must be in [0, 1]");
    if (params.q0 < 0.0 || params.q0 > 1.0) throw UsageError("q0 must be in [0, 1]");
    if (params.t0 < 1) throw UsageError("t0 must be at least 1");
    if (params.n_clans < 1 || params.n_per_clan < 1) {
        throw UsageError("population needs at least one clan and one elephant per clan");
    }
    if (params.max_generations < 0) throw UsageError("max_generations must be nonnegative");
}

int territory_dist_elephant(const EeholsifParams& params, const Territory& t) {
    if (params.dist_elephant > 0) return params.dist_elephant;
    return std::max(1, (t.hi - t.lo + 1) / 10);
}

// Clan seed + members inside the territory's position range, distinct
// from everything in `used`.
void draw_clan_positions(Clan& clan, const Territory& territory, int n_per_clan,
                         int dist_elephant, std::unordered_set<int>& used, Rng& rng) {
    const int width = territory.hi - territory.lo + 1;
    if (width < n_per_clan) {
        throw UsageError("territory " + std::to_string(territory.cluster_id) + " spans only " +
                         std::to_string(width) + " positions; cannot hold a clan of " +
                         std::to_string(n_per_clan));
    }
    int seed = 0;
    bool found = false;
    for (int t = 0; t < kDrawTries; ++t) {
        seed = static_cast<int>(uniform_int(rng, territory.lo, territory.hi));
        if (!used.contains(seed)) {
            found = true;
            break;
        }
    }
    if (!found) {
        throw UsageError("could not place a clan seed inside territory " +
                         std::to_string(territory.cluster_id));
    }
    used.insert(seed);
    clan.members.push_back({seed, {}, 0.0});

    int lo = std::max(territory.lo, seed - dist_elephant);
    int hi = std::min(territory.hi, seed + dist_elephant);
    if (hi - lo + 1 < n_per_clan) {
        // The dist_elephant window cannot hold the clan at all; fall back
        // to the whole territory.
        lo = territory.lo;
        hi = territory.hi;
    }
    for (int j = 1; j < n_per_clan; ++j) {
        bool member_found = false;
        for (int t = 0; t < kDrawTries; ++t) {
            const int pos = static_cast<int>(uniform_int(rng, lo, hi));
            if (used.contains(pos)) continue;
            used.insert(pos);
            clan.members.push_back({pos, {}, 0.0});
            member_found = true;
            break;
        }
        if (!member_found) {
            throw UsageError("could not draw " + std::to_string(n_per_clan) +
                             " distinct positions (dist_elephant = " +
                             std::to_string(dist_elephant) + ") inside territory " +
                             std::to_string(territory.cluster_id));
        }
    }
}

}  // namespace

std::vector<double> territory_distances(const SocialGraph& g, const Clustering& clustering,
                                        const TermVector& interests) {
    std::vector<double> distances;
    distances.reserve(static_cast<std::size_t>(clustering.k));
    for (int j = 0; j < clustering.k; ++j) {
        const Territory& t = clustering.territories[static_cast<std::size_t>(j)];
        distances.push_back(
            euclidean_distance(interests, g.content_edge(t.centroid_edge).vector));
    }
    return distances;
}

int choose_territory(std::span<const double> distances, double q0, ExplorationWeighting weighting,
                     Rng& rng) {
    if (distances.empty()) throw UsageError("no territories to choose from");
    const double q = uniform01(rng);
    if (q < q0) {
        // Exploitation: the territory nearest to the interests.
        int best = 0;
        for (std::size_t j = 1; j < distances.size(); ++j) {
            if (distances[j] < distances[static_cast<std::size_t>(best)]) best = static_cast<int>(j);
        }
        return best;
    }

    std::vector<double> weights(distances.begin(), distances.end());
    if (weighting == ExplorationWeighting::Inverse) {
        // A zero distance dominates: pick uniformly among the zeros.
        std::vector<int> zeros;
        for (std::size_t j = 0; j < weights.size(); ++j) {
            if (weights[j] == 0.0) zeros.push_back(static_cast<int>(j));
        }
        if (!zeros.empty()) {
            return zeros[static_cast<std::size_t>(
                uniform_int(rng, 0, static_cast<std::int64_t>(zeros.size()) - 1))];
        }
        for (double& w : weights) w = 1.0 / w;
    }
    double total = 0.0;
    for (const double w : weights) total += w;
    if (total <= 0.0) {
        // All distances zero: uniform.
        return static_cast<int>(uniform_int(rng, 0, static_cast<std::int64_t>(weights.size()) - 1));
    }
    const double u = uniform01(rng) * total;
    double acc = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        acc += weights[j];
        if (u < acc) return static_cast<int>(j);
    }
    return static_cast<int>(weights.size()) - 1;
}

std::vector<ClanState> place_clans(const TermVector& interests, const SocialGraph& g,
                                   const Clustering& clustering, const EeholsifParams& params,
                                   Rng& rng) {
    validate(params);
    if (!clustering.has_positions()) {
        throw UsageError("clustering needs semantic positions before clans can be placed");
    }
    const std::vector<double> distances = territory_distances(g, clustering, interests);

    std::vector<ClanState> states;
    states.reserve(static_cast<std::size_t>(params.n_clans));
    std::unordered_set<int> used;
    for (int ci = 0; ci < params.n_clans; ++ci) {
        ClanState state;
        state.territory = choose_territory(distances, params.q0, params.exploration_weighting, rng);
        const Territory& territory =
            clustering.territories[static_cast<std::size_t>(state.territory)];
        draw_clan_positions(state.clan, territory, params.n_per_clan,
                            territory_dist_elephant(params, territory), used, rng);
        states.push_back(std::move(state));
    }
    return states;
}

void migrate_clan(ClanState& state, const Clustering& clustering, const EeholsifParams& params,
                  Rng& rng) {
    state.stagnation = 0;
    if (clustering.k <= 1) return;  // nowhere else to go

    // Uniform over the real territories other than the current one.
    int target = static_cast<int>(uniform_int(rng, 0, clustering.k - 2));
    if (target >= state.territory) ++target;
    const Territory& territory = clustering.territories[static_cast<std::size_t>(target)];

    const int n = static_cast<int>(state.clan.members.size());
    state.clan.members.clear();
    std::unordered_set<int> used;
    draw_clan_positions(state.clan, territory, n, territory_dist_elephant(params, territory), used,
                        rng);
    state.territory = target;
    state.clan.matriarch = 0;  // re-evaluated next generation
}

RankedPaths run_eeholsif(const SocialGraph& g, const TermVector& interests,
                         const Clustering& clustering, const EeholsifParams& params,
                         const ClanStateObserver& observer) {
    validate(params);
    const int m = static_cast<int>(g.content_edge_count());
    if (m == 0) throw UsageError("cannot forage an empty graph");

    ForagingContext ctx(g, interests);
    ctx.use_positions(&clustering);
    const PositionBounds bounds{1, m};

    EhoParams operator_params;
    operator_params.alpha = params.alpha;
    operator_params.beta = params.beta;
    operator_params.matriarch_update = params.matriarch_update;

    Rng init_rng(derive_seed(params.seed, 0xee01));
    std::vector<ClanState> states = place_clans(interests, g, clustering, params, init_rng);

    PathCollector collector;
    std::vector<RankedPaths::Migration> migrations;

    for (int gen = 1; gen <= params.max_generations; ++gen) {
        for (std::size_t ci = 0; ci < states.size(); ++ci) {
            Rng clan_rng(derive_seed(params.seed, 0xee02, static_cast<std::uint64_t>(gen),
                                     static_cast<std::uint64_t>(ci)));
            ClanState& state = states[ci];
            Clan& clan = state.clan;

            for (Elephant& e : clan.members) {
                e.path = build_surfing_path(ctx, e.position, clan_rng, params.max_path_depth);
                e.fitness = e.path.fitness;
            }
            clan.matriarch = best_member(clan);

            const Elephant& best = clan.members[static_cast<std::size_t>(clan.matriarch)];
            collector.add(best.path);
            if (best.fitness > clan.best_fitness) {
                clan.best_fitness = best.fitness;
                clan.best_path = best.path;
                state.stagnation = 0;
            } else {
                ++state.stagnation;
            }

            if (state.stagnation >= params.t0) {
                migrations.push_back({gen, static_cast<int>(ci), state.territory, state.territory,
                                      state.stagnation});
                migrate_clan(state, clustering, params, clan_rng);
                migrations.back().to_territory = state.territory;
            } else {
                update_positions(clan, operator_params, bounds, clan_rng);
                update_matriarch(clan, operator_params, bounds);
                if (params.separating_enabled) separate_worst(clan, bounds, clan_rng);
            }
        }
        collector.close_generation();
        if (observer) observer(gen, states);
    }

    RankedPaths out = collector.finish();
    out.migrations = std::move(migrations);
    out.final_stagnation.reserve(states.size());
    for (const ClanState& s : states) out.final_stagnation.push_back(s.stagnation);
    return out;
}

RankedPaths run_eeholsif(const SocialGraph& g, const Vocabulary& vocab,
                         const InterestVector& interests, const Clustering& clustering,
                         const EeholsifParams& params, const ClanStateObserver& observer) {
    return run_eeholsif(g, interests.project(vocab), clustering, params, observer);
}

}  // namespace forage
