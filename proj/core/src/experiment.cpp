#include "forage/experiment.hpp"

#include <charconv>
#include <chrono>
#include <fstream>

#include "forage/clustering.hpp"
#include "forage/error.hpp"
#include "forage/ingest.hpp"
#include "forage/text.hpp"

namespace forage {
namespace {

bool parse_bool(std::string_view v) {
    if (v == "true" || v == "on" || v == "1" || v == "yes" || v == "live") return true;
    if (v == "false" || v == "off" || v == "0" || v == "no") return false;
    throw UsageError("cannot parse boolean value '" + std::string(v) + "'");
}

double parse_double(std::string_view v) {
    try {
        return std::stod(std::string(v));
    } catch (const std::exception&) {
        throw UsageError("cannot parse number '" + std::string(v) + "'");
    }
}

std::int64_t parse_int(std::string_view v) {
    std::int64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw UsageError("cannot parse integer '" + std::string(v) + "'");
    }
    return out;
}

std::vector<std::string> split(std::string_view v, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= v.size()) {
        const std::size_t end = v.find(sep, start);
        if (end == std::string_view::npos) {
            if (start < v.size()) parts.emplace_back(v.substr(start));
            break;
        }
        if (end > start) parts.emplace_back(v.substr(start, end - start));
        start = end + 1;
    }
    return parts;
}

}  // namespace

void apply_config_entry(ExperimentConfig& c, std::string_view key, std::string_view value) {
    if (key == "engine") {
        c.engine = std::string(value);
    } else if (key == "corpus") {
        c.corpus = std::string(value);
    } else if (key == "interests") {
        for (auto& q : split(value, ';')) c.interests.push_back(std::move(q));
    } else if (key == "interests_file") {
        c.interests_file = std::string(value);
    } else if (key == "interest_top_n") {
        c.interest_top_n = static_cast<std::size_t>(parse_int(value));
    } else if (key == "seed") {
        const auto s = static_cast<std::uint64_t>(parse_int(value));
        c.seed = s;
        c.eho.seed = s;
        c.eeholsif.seed = s;
        c.acs.seed = s;
        c.pso.seed = s;
    } else if (key == "snapshot") {
        c.snapshot = std::string(value);
    } else if (key == "no_cluster") {
        c.no_cluster = parse_bool(value);
    } else if (key == "k") {
        c.cluster_k = static_cast<int>(parse_int(value));
        c.eeholsif.k = c.cluster_k;
    } else if (key == "cluster_max_iter") {
        c.cluster_max_iter = static_cast<int>(parse_int(value));
    } else if (key == "timing") {
        c.timing = parse_bool(value);
    } else if (key == "top_n") {
        c.top_n = static_cast<int>(parse_int(value));
    } else if (key == "stopwords") {
        c.stopwords_file = std::string(value);
    } else if (key == "alpha") {
        c.eho.alpha = c.eeholsif.alpha = c.acs.alpha = parse_double(value);
    } else if (key == "beta") {
        c.eho.beta = c.eeholsif.beta = c.acs.beta = parse_double(value);
    } else if (key == "n_clans") {
        c.eho.n_clans = c.eeholsif.n_clans = static_cast<int>(parse_int(value));
    } else if (key == "n_per_clan") {
        c.eho.n_per_clan = c.eeholsif.n_per_clan = static_cast<int>(parse_int(value));
    } else if (key == "max_gen") {
        c.eho.max_generations = c.eeholsif.max_generations = static_cast<int>(parse_int(value));
    } else if (key == "dist_clan") {
        c.eho.dist_clan = static_cast<int>(parse_int(value));
    } else if (key == "dist_elephant") {
        c.eho.dist_elephant = c.eeholsif.dist_elephant = static_cast<int>(parse_int(value));
    } else if (key == "q0") {
        c.eeholsif.q0 = c.acs.q0 = parse_double(value);
    } else if (key == "t0") {
        c.eeholsif.t0 = static_cast<int>(parse_int(value));
    } else if (key == "separating") {
        c.eho.separating_enabled = c.eeholsif.separating_enabled = parse_bool(value);
    } else if (key == "matriarch_update") {
        MatriarchUpdate mode;
        if (value == "literal") mode = MatriarchUpdate::PaperLiteral;
        else if (value == "convex") mode = MatriarchUpdate::Convex;
        else throw UsageError("matriarch_update must be 'literal' or 'convex'");
        c.eho.matriarch_update = c.eeholsif.matriarch_update = mode;
    } else if (key == "exploration_weighting") {
        if (value == "direct") c.eeholsif.exploration_weighting = ExplorationWeighting::Direct;
        else if (value == "inverse") c.eeholsif.exploration_weighting = ExplorationWeighting::Inverse;
        else throw UsageError("exploration_weighting must be 'direct' or 'inverse'");
    } else if (key == "max_path_depth") {
        const int depth = static_cast<int>(parse_int(value));
        c.eho.max_path_depth = c.eeholsif.max_path_depth = depth;
        c.acs.max_path_depth = c.pso.max_path_depth = depth;
    } else if (key == "rho") {
        c.acs.rho = parse_double(value);
    } else if (key == "n_ants") {
        c.acs.n_ants = static_cast<int>(parse_int(value));
    } else if (key == "n_generations") {
        c.acs.n_generations = c.pso.n_generations = static_cast<int>(parse_int(value));
    } else if (key == "c1") {
        c.pso.c1 = parse_double(value);
    } else if (key == "c2") {
        c.pso.c2 = parse_double(value);
    } else if (key == "inertia") {
        c.pso.inertia = parse_double(value);
    } else if (key == "n_particles") {
        c.pso.n_particles = static_cast<int>(parse_int(value));
    } else {
        throw UsageError("unknown config key '" + std::string(key) + "'");
    }
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path.string());
    ExperimentConfig config;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        const std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;
        const std::size_t eq = line.find('=', start);
        if (eq == std::string::npos) {
            throw UsageError("config line " + std::to_string(lineno) + " is not key=value");
        }
        std::string key = line.substr(start, eq - start);
        while (!key.empty() && key.back() == ' ') key.pop_back();
        std::size_t vstart = eq + 1;
        while (vstart < line.size() && line[vstart] == ' ') ++vstart;
        apply_config_entry(config, key, line.substr(vstart));
    }
    return config;
}

std::vector<std::pair<std::string, std::string>> echo_params(const ExperimentConfig& c) {
    std::vector<std::pair<std::string, std::string>> out;
    auto add = [&](const std::string& k, const std::string& v) { out.emplace_back(k, v); };
    auto add_d = [&](const std::string& k, double v) { add(k, format_double(v)); };
    auto add_i = [&](const std::string& k, std::int64_t v) { add(k, std::to_string(v)); };

    add("interest_top_n", std::to_string(c.interest_top_n));
    add("timing", c.timing ? "live" : "off");
    add_i("top_n", c.top_n);
    if (!c.stopwords_file.empty()) add("stopwords", c.stopwords_file.string());
    if (c.engine == "ehoif") {
        add_d("alpha", c.eho.alpha);
        add_d("beta", c.eho.beta);
        add_i("n_clans", c.eho.n_clans);
        add_i("n_per_clan", c.eho.n_per_clan);
        add_i("max_gen", c.eho.max_generations);
        add_i("dist_clan", c.eho.dist_clan);
        add_i("dist_elephant", c.eho.dist_elephant);
        add("separating", c.eho.separating_enabled ? "on" : "off");
        add("matriarch_update",
            c.eho.matriarch_update == MatriarchUpdate::Convex ? "convex" : "literal");
        add_i("max_path_depth", c.eho.max_path_depth);
    } else if (c.engine == "eeholsif") {
        add_d("alpha", c.eeholsif.alpha);
        add_d("beta", c.eeholsif.beta);
        add_i("n_clans", c.eeholsif.n_clans);
        add_i("n_per_clan", c.eeholsif.n_per_clan);
        add_i("max_gen", c.eeholsif.max_generations);
        add_d("q0", c.eeholsif.q0);
        add_i("t0", c.eeholsif.t0);
        add_i("k", c.cluster_k > 0 ? c.cluster_k : c.eeholsif.k);
        add_i("cluster_max_iter", c.cluster_max_iter);
        if (!c.snapshot.empty()) add("snapshot", c.snapshot.string());
        add("no_cluster", c.no_cluster ? "true" : "false");
        add_i("dist_elephant", c.eeholsif.dist_elephant);
        add("separating", c.eeholsif.separating_enabled ? "on" : "off");
        add("matriarch_update",
            c.eeholsif.matriarch_update == MatriarchUpdate::Convex ? "convex" : "literal");
        add("exploration_weighting",
            c.eeholsif.exploration_weighting == ExplorationWeighting::Inverse ? "inverse"
                                                                              : "direct");
        add_i("max_path_depth", c.eeholsif.max_path_depth);
    } else if (c.engine == "acsif") {
        add_d("alpha", c.acs.alpha);
        add_d("beta", c.acs.beta);
        add_d("rho", c.acs.rho);
        add_d("q0", c.acs.q0);
        add_i("n_ants", c.acs.n_ants);
        add_i("n_generations", c.acs.n_generations);
        add_i("max_path_depth", c.acs.max_path_depth);
    } else if (c.engine == "psoif") {
        add_d("c1", c.pso.c1);
        add_d("c2", c.pso.c2);
        add_d("inertia", c.pso.inertia);
        add_i("n_particles", c.pso.n_particles);
        add_i("n_generations", c.pso.n_generations);
        add_i("max_path_depth", c.pso.max_path_depth);
        if (!c.snapshot.empty()) add("snapshot", c.snapshot.string());
    }
    return out;
}

RunReport run_experiment(const ExperimentConfig& config) {
    if (config.engine != "ehoif" && config.engine != "eeholsif" && config.engine != "acsif" &&
        config.engine != "psoif") {
        throw UsageError("invalid engine '" + config.engine +
                         "' (expected ehoif, eeholsif, acsif or psoif)");
    }

    std::vector<std::string> queries = config.interests;
    if (!config.interests_file.empty()) {
        std::ifstream in(config.interests_file);
        if (!in) throw DataError("cannot open interests file: " + config.interests_file.string());
        std::string line;
        while (std::getline(in, line)) {
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
            if (!line.empty()) queries.push_back(line);
        }
    }
    if (queries.empty()) throw UsageError("no interest queries given");

    IngestResult corpus = ingest(config.corpus);
    SocialGraph& graph = corpus.graph;

    StopwordSet custom_stopwords;
    TfidfOptions text_options;
    if (!config.stopwords_file.empty()) {
        custom_stopwords = StopwordSet::from_file(config.stopwords_file);
        text_options.stopwords = &custom_stopwords;
    }
    const StopwordSet& stopwords =
        text_options.stopwords ? *text_options.stopwords : StopwordSet::bundled();
    const Vocabulary vocab = tfidf_vectorize(graph, text_options);

    // Load or build the clustering when the engine wants semantic
    // positions; PSO only picks up an existing snapshot.
    Clustering clustering;
    bool have_clustering = false;
    const bool needs_clustering = config.engine == "eeholsif";
    const bool snapshot_exists =
        !config.snapshot.empty() && std::filesystem::exists(config.snapshot);
    if (snapshot_exists) {
        clustering = load_clustering(config.snapshot, graph, corpus.stats.digest);
        have_clustering = true;
    } else if (needs_clustering) {
        if (config.no_cluster) {
            throw DataError("no_cluster is set but clustering snapshot '" +
                            config.snapshot.string() + "' does not exist");
        }
        const int k = config.cluster_k > 0 ? config.cluster_k : config.eeholsif.k;
        KmeansOptions opts;
        opts.max_iterations = config.cluster_max_iter;
        Rng cluster_rng(derive_seed(config.seed, 0xc1u));
        clustering = run_kmeans(graph, k, opts, cluster_rng);
        clustering.seed = config.seed;
        assign_semantic_positions(graph, clustering);
        have_clustering = true;
        if (!config.snapshot.empty()) {
            save_clustering(clustering, config.snapshot, corpus.stats.digest);
        }
    }

    RunReport report;
    report.engine = config.engine;
    report.seed = config.seed;
    report.corpus_digest = corpus.stats.digest;
    report.params = echo_params(config);
    report.params.emplace_back("corpus", config.corpus.string());
    report.params.emplace_back("content_edges", std::to_string(graph.content_edge_count()));
    report.params.emplace_back("queries", std::to_string(queries.size()));

    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
        QueryRow row;
        row.interest_input = queries[qi];
        const InterestVector interests =
            extract_interests(queries[qi], {}, config.interest_top_n, stopwords);
        row.interest_terms = interests.terms();
        const TermVector projected = interests.project(vocab);

        // One derived seed per query keeps queries independent while the
        // whole report stays a function of (config, seed, corpus).
        const std::uint64_t qseed = derive_seed(config.seed, 0x40u, qi);

        RankedPaths ranked;
        const auto t0 = std::chrono::steady_clock::now();
        if (config.engine == "ehoif") {
            EhoParams p = config.eho;
            p.seed = qseed;
            ranked = run_ehoif(graph, projected, p);
        } else if (config.engine == "eeholsif") {
            EeholsifParams p = config.eeholsif;
            p.seed = qseed;
            ranked = run_eeholsif(graph, projected, clustering, p);
        } else if (config.engine == "acsif") {
            AcsParams p = config.acs;
            p.seed = qseed;
            ranked = run_acsif(graph, projected, p);
        } else {
            PsoParams p = config.pso;
            p.seed = qseed;
            ranked = run_psoif(graph, projected, p, have_clustering ? &clustering : nullptr);
        }
        const auto t1 = std::chrono::steady_clock::now();

        if (config.timing) {
            row.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
        }
        row.curve = ranked.best_fitness_curve;
        row.convergence_generation = ranked.convergence_generation;
        if (!ranked.paths.empty()) {
            row.best_path = ranked.paths.front();
            row.score = row.best_path.fitness;
            row.surfing_depth = row.best_path.depth();
            for (const EdgeId e : row.best_path.edges) {
                row.best_path_texts.push_back(graph.content_edge(e).raw_text);
            }
            const std::size_t keep =
                std::min(ranked.paths.size(), static_cast<std::size_t>(std::max(config.top_n, 0)));
            row.ranked.assign(ranked.paths.begin(),
                              ranked.paths.begin() + static_cast<std::ptrdiff_t>(keep));
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace forage
