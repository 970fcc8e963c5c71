#include "forage/eho.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "forage/error.hpp"

namespace forage {
namespace {

constexpr int kDrawTries = 200;   // rejection draws per position
constexpr int kRestarts = 50;     // full restarts before giving up

int default_dist_clan(const EhoParams& p, int m) {
    if (p.dist_clan > 0) return p.dist_clan;
    return std::max(1, m / (2 * std::max(1, p.n_clans)));
}

int default_dist_elephant(const EhoParams& p, int m) {
    if (p.dist_elephant > 0) return p.dist_elephant;
    return std::max(1, m / (10 * std::max(1, p.n_clans)));
}

}  // namespace

int round_half_up_clamp(double x, PositionBounds bounds) {
    const int rounded = static_cast<int>(std::floor(x + 0.5));
    return std::clamp(rounded, bounds.min_pos, bounds.max_pos);
}

int position_update_step(int x, int x_best, double alpha, double r, PositionBounds bounds) {
    const double next = x + alpha * (x_best - x) * r;
    return round_half_up_clamp(next, bounds);
}

int matriarch_position(int x_avg, int x_best, double beta, PositionBounds bounds,
                       MatriarchUpdate mode) {
    double next;
    switch (mode) {
        case MatriarchUpdate::PaperLiteral:
            next = static_cast<double>(x_avg) * beta;
            break;
        case MatriarchUpdate::Convex:
            next = x_best + beta * (x_avg - x_best);
            break;
        default:
            next = static_cast<double>(x_avg) * beta;
    }
    return round_half_up_clamp(next, bounds);
}

int separating_position(PositionBounds bounds, double r) {
    const double raw = bounds.min_pos + (bounds.max_pos - bounds.min_pos + 1) * r;
    return round_half_up_clamp(raw, bounds);
}

int closest_to_average_position(const Clan& clan) {
    double sum = 0.0;
    for (const Elephant& e : clan.members) sum += e.fitness;
    const double avg = sum / static_cast<double>(clan.members.size());

    std::size_t best = 0;
    double best_gap = std::abs(clan.members[0].fitness - avg);
    for (std::size_t i = 1; i < clan.members.size(); ++i) {
        const double gap = std::abs(clan.members[i].fitness - avg);
        if (gap < best_gap) {
            best_gap = gap;
            best = i;
        }
    }
    return clan.members[best].position;
}

int best_member(const Clan& clan) {
    int best = 0;
    for (std::size_t i = 1; i < clan.members.size(); ++i) {
        if (clan.members[i].fitness > clan.members[static_cast<std::size_t>(best)].fitness) {
            best = static_cast<int>(i);
        }
    }
    return best;
}

int worst_member(const Clan& clan) {
    int worst = 0;
    for (std::size_t i = 1; i < clan.members.size(); ++i) {
        if (clan.members[i].fitness < clan.members[static_cast<std::size_t>(worst)].fitness) {
            worst = static_cast<int>(i);
        }
    }
    return worst;
}

namespace {

void validate(const EhoParams& params) {
    if (params.alpha < 0.0 || params.alpha > 1.0) throw UsageError("alpha must be in [0, 1]");
    if (params.beta < 0.0 || params.beta > 1.0) throw UsageError("beta must be in [0, 1]");
    if (params.n_clans < 1 || params.n_per_clan < 1) {
        throw UsageError("population needs at least one clan and one elephant per clan");
    }
    if (params.max_generations < 0) throw UsageError("max_generations must be nonnegative");
}

}  // namespace

std::vector<Clan> init_population(const EhoParams& params, int m, Rng& rng) {
    validate(params);
    if (static_cast<long long>(params.n_clans) * params.n_per_clan > m) {
        throw UsageError("population of " + std::to_string(params.n_clans * params.n_per_clan) +
                         " distinct positions does not fit in [1, " + std::to_string(m) + "]");
    }
    const int dist_clan = default_dist_clan(params, m);
    const int dist_elephant = default_dist_elephant(params, m);

    for (int attempt = 0; attempt < kRestarts; ++attempt) {
        std::vector<Clan> clans;
        std::unordered_set<int> used;
        std::vector<int> seeds;
        bool failed = false;

        for (int ci = 0; ci < params.n_clans && !failed; ++ci) {
            int seed = 0;
            bool found = false;
            for (int t = 0; t < kDrawTries; ++t) {
                seed = static_cast<int>(uniform_int(rng, 1, m));
                if (used.contains(seed)) continue;
                bool spaced = true;
                for (const int other : seeds) {
                    if (std::abs(other - seed) < dist_clan) {
                        spaced = false;
                        break;
                    }
                }
                if (spaced) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                failed = true;
                break;
            }
            seeds.push_back(seed);
            used.insert(seed);

            Clan clan;
            clan.members.push_back({seed, {}, 0.0});
            const int lo = std::max(1, seed - dist_elephant);
            const int hi = std::min(m, seed + dist_elephant);
            for (int j = 1; j < params.n_per_clan; ++j) {
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
                    failed = true;
                    break;
                }
            }
            if (!failed) clans.push_back(std::move(clan));
        }
        if (!failed) return clans;
    }
    throw UsageError("could not satisfy dist_clan = " + std::to_string(dist_clan) +
                     " / dist_elephant = " + std::to_string(dist_elephant) + " for " +
                     std::to_string(params.n_clans) + " clans of " +
                     std::to_string(params.n_per_clan) + " in [1, " + std::to_string(m) + "]");
}

void update_positions(Clan& clan, const EhoParams& params, PositionBounds bounds, Rng& rng) {
    const int x_best = clan.members[static_cast<std::size_t>(clan.matriarch)].position;
    for (std::size_t i = 0; i < clan.members.size(); ++i) {
        if (static_cast<int>(i) == clan.matriarch) continue;
        const double r = uniform01(rng);
        clan.members[i].position =
            position_update_step(clan.members[i].position, x_best, params.alpha, r, bounds);
    }
}

void update_matriarch(Clan& clan, const EhoParams& params, PositionBounds bounds) {
    const int x_avg = closest_to_average_position(clan);
    Elephant& matriarch = clan.members[static_cast<std::size_t>(clan.matriarch)];
    matriarch.position =
        matriarch_position(x_avg, matriarch.position, params.beta, bounds, params.matriarch_update);
}

void separate_worst(Clan& clan, PositionBounds bounds, Rng& rng) {
    const int worst = worst_member(clan);
    const double r = uniform01(rng);
    clan.members[static_cast<std::size_t>(worst)] = {separating_position(bounds, r), {}, 0.0};
}

namespace {

void evaluate_clan(Clan& clan, const ForagingContext& ctx, int max_path_depth, Rng& rng) {
    for (Elephant& e : clan.members) {
        e.path = build_surfing_path(ctx, e.position, rng, max_path_depth);
        e.fitness = e.path.fitness;
    }
    clan.matriarch = best_member(clan);
}

}  // namespace

RankedPaths run_ehoif(const SocialGraph& g, const TermVector& interests, const EhoParams& params,
                      const GenerationObserver& observer) {
    validate(params);
    const int m = static_cast<int>(g.content_edge_count());
    if (m == 0) throw UsageError("cannot forage an empty graph");

    ForagingContext ctx(g, interests);
    const PositionBounds bounds{1, m};

    Rng init_rng(derive_seed(params.seed, 0xe401));
    std::vector<Clan> clans = init_population(params, m, init_rng);

    PathCollector collector;
    for (int gen = 1; gen <= params.max_generations; ++gen) {
        for (std::size_t ci = 0; ci < clans.size(); ++ci) {
            // One stream per clan per generation keeps runs reproducible
            // regardless of evaluation order.
            Rng clan_rng(derive_seed(params.seed, 0xe402, static_cast<std::uint64_t>(gen),
                                     static_cast<std::uint64_t>(ci)));
            Clan& clan = clans[ci];
            evaluate_clan(clan, ctx, params.max_path_depth, clan_rng);

            const Elephant& best = clan.members[static_cast<std::size_t>(clan.matriarch)];
            if (best.fitness > clan.best_fitness) {
                clan.best_fitness = best.fitness;
                clan.best_path = best.path;
            }
            collector.add(best.path);

            update_positions(clan, params, bounds, clan_rng);
            update_matriarch(clan, params, bounds);
            if (params.separating_enabled) separate_worst(clan, bounds, clan_rng);
        }
        collector.close_generation();
        if (observer) observer(gen, clans);
    }
    return collector.finish();
}

RankedPaths run_ehoif(const SocialGraph& g, const Vocabulary& vocab,
                      const InterestVector& interests, const EhoParams& params,
                      const GenerationObserver& observer) {
    return run_ehoif(g, interests.project(vocab), params, observer);
}

}  // namespace forage
