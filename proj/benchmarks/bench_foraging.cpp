#include <benchmark/benchmark.h>

#include "forage/baselines.hpp"
#include "forage/clustering.hpp"
#include "forage/eeholsif.hpp"
#include "forage/eho.hpp"
#include "forage/foraging.hpp"
#include "forage/synth.hpp"
#include "forage/text.hpp"

namespace {

using namespace forage;

struct Fixture {
    SocialGraph graph;
    Vocabulary vocab;
    Clustering clustering;
    TermVector interests;

    explicit Fixture(int posts) {
        SynthOptions options;
        options.n_posts = posts;
        options.seed = 7;
        graph = SocialGraph::build(synth_corpus(options).records);
        vocab = tfidf_vectorize(graph);
        Rng rng(7);
        clustering = run_kmeans(graph, 3, {}, rng);
        assign_semantic_positions(graph, clustering);
        interests = extract_interests(synth_topic_query(0, 3), {}, 10).project(vocab);
    }
};

Fixture& fixture() {
    static Fixture fx(4000);
    return fx;
}

void BM_NormalizeText(benchmark::State& state) {
    const std::string text =
        "Getting Around Smart Cities #SmartCities via https://t.co/yXaZMpRqm9 @someone "
        "running runners ran faster than expected";
    for (auto _ : state) {
        benchmark::DoNotOptimize(normalize_text(text));
    }
}
BENCHMARK(BM_NormalizeText);

void BM_TfidfVectorize(benchmark::State& state) {
    SynthOptions options;
    options.n_posts = static_cast<int>(state.range(0));
    options.seed = 3;
    const SynthCorpus corpus = synth_corpus(options);
    for (auto _ : state) {
        SocialGraph g = SocialGraph::build(corpus.records);
        benchmark::DoNotOptimize(tfidf_vectorize(g));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TfidfVectorize)->Arg(1000)->Arg(4000);

void BM_KmeansAssignPass(benchmark::State& state) {
    Fixture& fx = fixture();
    Rng rng(1);
    const auto centroids = init_centroids(fx.graph, 8, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(assign_clusters(fx.graph, centroids));
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(fx.graph.content_edge_count()));
}
BENCHMARK(BM_KmeansAssignPass);

void BM_BuildSurfingPath(benchmark::State& state) {
    Fixture& fx = fixture();
    const ForagingContext ctx(fx.graph, fx.interests);
    Rng rng(5);
    int start = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_surfing_path(ctx, start, rng));
        start = start % ctx.m() + 1;
    }
}
BENCHMARK(BM_BuildSurfingPath);

void BM_EhoifRun(benchmark::State& state) {
    Fixture& fx = fixture();
    EhoParams params;
    params.n_clans = 4;
    params.n_per_clan = 30;
    params.max_generations = static_cast<int>(state.range(0));
    params.seed = 11;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_ehoif(fx.graph, fx.interests, params));
    }
}
BENCHMARK(BM_EhoifRun)->Arg(10);

void BM_EeholsifRun(benchmark::State& state) {
    Fixture& fx = fixture();
    EeholsifParams params;
    params.max_generations = static_cast<int>(state.range(0));
    params.seed = 11;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_eeholsif(fx.graph, fx.interests, fx.clustering, params));
    }
}
BENCHMARK(BM_EeholsifRun)->Arg(10);

void BM_AcsifRun(benchmark::State& state) {
    Fixture& fx = fixture();
    AcsParams params;
    params.n_ants = 25;
    params.n_generations = static_cast<int>(state.range(0));
    params.seed = 11;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_acsif(fx.graph, fx.interests, params));
    }
}
BENCHMARK(BM_AcsifRun)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
