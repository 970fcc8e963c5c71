// forage: ingest a social-post corpus, cluster it into territories and
// run swarm-based interest searches over it.
//
// Subcommands: ingest, cluster, forage, synth, report.
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "forage/clustering.hpp"
#include "forage/error.hpp"
#include "forage/experiment.hpp"
#include "forage/ingest.hpp"
#include "forage/report.hpp"
#include "forage/synth.hpp"
#include "forage/text.hpp"

namespace {

using namespace forage;

int cmd_ingest(const std::filesystem::path& corpus) {
    const IngestResult result = ingest(corpus);
    const IngestStats& s = result.stats;
    std::cout << "corpus:            " << corpus.string() << '\n'
              << "digest:            " << s.digest << '\n'
              << "lines:             " << s.lines << '\n'
              << "malformed:         " << s.malformed << '\n'
              << "users:             " << result.graph.user_count() << '\n'
              << "content edges:     " << s.content_edges << '\n'
              << "structural edges:  " << s.structural_edges << '\n'
              << "dangling parents:  " << s.dangling_parents << '\n';
    if (s.lines == 0) std::cout << "warning: corpus is empty\n";
    return 0;
}

struct ClusterArgs {
    std::filesystem::path corpus;
    int k = 0;
    std::string scan_range;  // "a..b"
    int max_iter = 100;
    std::uint64_t seed = 0;
    std::filesystem::path out;
    std::filesystem::path stopwords;
    bool wss_squared = false;
};

int cmd_cluster(const ClusterArgs& args) {
    IngestResult result = ingest(args.corpus);
    SocialGraph& graph = result.graph;
    StopwordSet custom;
    TfidfOptions text_options;
    if (!args.stopwords.empty()) {
        custom = StopwordSet::from_file(args.stopwords);
        text_options.stopwords = &custom;
    }
    tfidf_vectorize(graph, text_options);

    KmeansOptions options;
    options.max_iterations = args.max_iter;
    options.wss_squared = args.wss_squared;

    if (!args.scan_range.empty()) {
        const auto sep = args.scan_range.find("..");
        if (sep == std::string::npos) throw UsageError("--scan-k expects a range like 1..8");
        const int lo = std::stoi(args.scan_range.substr(0, sep));
        const int hi = std::stoi(args.scan_range.substr(sep + 2));
        if (lo < 1 || hi < lo) throw UsageError("--scan-k range must satisfy 1 <= a <= b");
        std::vector<int> ks;
        for (int k = lo; k <= hi; ++k) ks.push_back(k);

        Rng rng(derive_seed(args.seed, 0xc1u));
        const auto curve = scan_k(graph, ks, options, rng);
        std::ostream* out = &std::cout;
        std::ofstream file;
        if (!args.out.empty()) {
            file.open(args.out);
            if (!file) throw DataError("cannot write " + args.out.string());
            out = &file;
        }
        *out << "k,wss\n";
        for (const auto& [k, w] : curve) *out << k << ',' << format_double(w) << '\n';
        return 0;
    }

    if (args.k < 1) throw UsageError("either --k or --scan-k is required");
    Rng rng(derive_seed(args.seed, 0xc1u));
    Clustering clustering = run_kmeans(graph, args.k, options, rng);
    clustering.seed = args.seed;
    assign_semantic_positions(graph, clustering);

    std::cout << "k:          " << clustering.k << '\n'
              << "converged:  " << (clustering.converged ? "yes" : "no") << '\n'
              << "iterations: " << clustering.iterations << '\n'
              << "wss:        " << format_double(wss(graph, clustering, args.wss_squared)) << '\n';
    for (const Territory& t : clustering.territories) {
        std::cout << "territory " << t.cluster_id << ": " << t.members.size()
                  << " posts, positions [" << t.lo << ", " << t.hi << "]"
                  << (clustering.has_overflow && t.cluster_id == clustering.k ? " (overflow)" : "")
                  << '\n';
    }
    if (!args.out.empty()) {
        save_clustering(clustering, args.out, result.stats.digest);
        std::cout << "snapshot:   " << args.out.string() << '\n';
    }
    return 0;
}

struct ForageArgs {
    std::filesystem::path config_file;
    std::vector<std::pair<std::string, std::string>> overrides;  // flag key/values, applied last
    std::filesystem::path report_out;
};

int cmd_forage(const ForageArgs& args) {
    ExperimentConfig config;
    if (!args.config_file.empty()) config = load_config_file(args.config_file);
    for (const auto& [key, value] : args.overrides) apply_config_entry(config, key, value);
    if (config.corpus.empty()) throw UsageError("--corpus (or corpus= in the config) is required");

    const RunReport report = run_experiment(config);

    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const QueryRow& row = report.rows[i];
        std::cout << "query " << i << ": " << row.interest_input << '\n'
                  << "  score " << format_double(row.score) << ", depth " << row.surfing_depth
                  << ", converged at generation " << row.convergence_generation;
        if (config.timing) std::cout << ", " << format_double(row.wall_seconds) << " s";
        std::cout << '\n';
        for (std::size_t t = 0; t < row.best_path_texts.size(); ++t) {
            std::cout << "    [" << row.best_path.edges[t] << "] " << row.best_path_texts[t]
                      << '\n';
        }
        if (row.ranked.size() > 1) {
            std::cout << "  top " << row.ranked.size() << " paths:\n";
            for (const SurfingPath& p : row.ranked) {
                std::cout << "    edge " << p.terminal_edge() << " score "
                          << format_double(p.fitness) << " depth " << p.depth() << '\n';
            }
        }
    }

    if (!args.report_out.empty()) {
        write_report(report, args.report_out);
        std::cout << "report written to " << args.report_out.string() << ".csv\n";
    }
    return 0;
}

struct SynthArgs {
    int topics = 3;
    int posts = 4000;
    int users = 0;
    int words_per_post = 8;
    double noise = 0.1;
    int follows = 0;
    std::uint64_t seed = 0;
    std::filesystem::path out;
};

int cmd_synth(const SynthArgs& args) {
    SynthOptions options;
    options.n_topics = args.topics;
    options.n_posts = args.posts;
    options.n_users = args.users;
    options.words_per_post = args.words_per_post;
    options.noise_ratio = args.noise;
    options.n_follows = args.follows;
    options.seed = args.seed;
    const SynthCorpus corpus = synth_corpus(options);
    write_jsonl(corpus.records, args.out);
    std::cout << "wrote " << corpus.records.size() << " records (" << args.posts << " posts, "
              << args.follows << " follows) to " << args.out.string() << '\n';
    return 0;
}

int cmd_report(const std::filesystem::path& report_csv) {
    std::ifstream in(report_csv);
    if (!in) throw DataError("cannot open report: " + report_csv.string());
    // Summarize: print query, score and depth columns of each row.
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty report: " + report_csv.string());
    std::size_t n = 0;
    double score_sum = 0.0;
    double score_max = 0.0;
    while (std::getline(in, line)) {
        // Fields: query,interest,interest_terms,score,... The interest
        // fields may be quoted; walk fields respecting quotes.
        std::vector<std::string> fields;
        std::string field;
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            const char ch = line[i];
            if (quoted) {
                if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else if (ch == '"') {
                    quoted = false;
                } else {
                    field += ch;
                }
            } else if (ch == '"') {
                quoted = true;
            } else if (ch == ',') {
                fields.push_back(std::move(field));
                field.clear();
            } else {
                field += ch;
            }
        }
        fields.push_back(std::move(field));
        if (fields.size() < 7) continue;
        const double score = std::strtod(fields[3].c_str(), nullptr);
        score_sum += score;
        score_max = std::max(score_max, score);
        std::cout << "query " << fields[0] << ": score " << fields[3] << ", depth " << fields[5]
                  << ", convergence " << fields[6] << ", interest \"" << fields[1] << "\"\n";
        ++n;
    }
    if (n > 0) {
        std::cout << "rows: " << n << ", mean score " << format_double(score_sum / double(n))
                  << ", max score " << format_double(score_max) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Information foraging on social graphs with swarm search engines"};
    app.require_subcommand(1);

    // ingest
    std::filesystem::path ingest_corpus;
    auto* ingest_cmd = app.add_subcommand("ingest", "Validate a JSON Lines corpus and print stats");
    ingest_cmd->add_option("corpus", ingest_corpus, "corpus file (JSON Lines)")->required();

    // cluster
    ClusterArgs cluster_args;
    auto* cluster_cmd = app.add_subcommand("cluster", "Partition posts into territories (k-means)");
    cluster_cmd->add_option("corpus", cluster_args.corpus, "corpus file")->required();
    cluster_cmd->add_option("--k", cluster_args.k, "number of territories");
    cluster_cmd->add_option("--scan-k", cluster_args.scan_range, "WSS elbow scan, e.g. 1..8");
    cluster_cmd->add_option("--max-iter", cluster_args.max_iter, "k-means iteration cap");
    cluster_cmd->add_option("--seed", cluster_args.seed, "random seed");
    cluster_cmd->add_option("--out", cluster_args.out, "snapshot path (or scan CSV path)");
    cluster_cmd->add_option("--stopwords", cluster_args.stopwords, "stopword file override");
    cluster_cmd->add_flag("--wss-squared", cluster_args.wss_squared, "square distances in WSS");

    // forage
    ForageArgs forage_args;
    auto* forage_cmd = app.add_subcommand("forage", "Run an interest search over a corpus");
    std::string corpus_flag, engine_flag, interests_flag, interests_file_flag, snapshot_flag;
    std::string timing_flag, stopwords_flag;
    std::optional<std::uint64_t> seed_flag;
    std::optional<int> top_n_flag, k_flag, t0_flag, n_clans_flag, n_per_clan_flag, max_gen_flag;
    std::optional<int> n_ants_flag, n_generations_flag, n_particles_flag, max_depth_flag;
    std::optional<int> dist_clan_flag, dist_elephant_flag, interest_top_n_flag;
    std::optional<double> alpha_flag, beta_flag, q0_flag, rho_flag, c1_flag, c2_flag, inertia_flag;
    std::string matriarch_flag, weighting_flag;
    bool no_cluster_flag = false;
    forage_cmd->add_option("--config", forage_args.config_file, "key=value config file");
    forage_cmd->add_option("--corpus", corpus_flag, "corpus file");
    forage_cmd->add_option("--engine", engine_flag, "ehoif | eeholsif | acsif | psoif");
    forage_cmd->add_option("--interests", interests_flag, "inline queries, ';' separated");
    forage_cmd->add_option("--interests-file", interests_file_flag, "one query per line");
    forage_cmd->add_option("--interest-top-n", interest_top_n_flag, "interest terms kept");
    forage_cmd->add_option("--top-n", top_n_flag, "ranked paths kept per query");
    forage_cmd->add_option("--seed", seed_flag, "random seed");
    forage_cmd->add_option("--snapshot", snapshot_flag, "clustering snapshot path");
    forage_cmd->add_flag("--no-cluster", no_cluster_flag, "fail instead of building a clustering");
    forage_cmd->add_option("--k", k_flag, "territory count when clustering is built");
    forage_cmd->add_option("--alpha", alpha_flag, "matriarch influence (EHO) / pheromone power (ACS)");
    forage_cmd->add_option("--beta", beta_flag, "average-position influence (EHO) / scent power (ACS)");
    forage_cmd->add_option("--n-clans", n_clans_flag, "clans in the population");
    forage_cmd->add_option("--n-per-clan", n_per_clan_flag, "elephants per clan");
    forage_cmd->add_option("--max-gen", max_gen_flag, "generations (EHO engines)");
    forage_cmd->add_option("--q0", q0_flag, "exploitation probability (EEHOLSIF / ACS)");
    forage_cmd->add_option("--t0", t0_flag, "stagnation threshold before migration");
    forage_cmd->add_option("--dist-clan", dist_clan_flag, "minimal distance between clan seeds");
    forage_cmd->add_option("--dist-elephant", dist_elephant_flag, "maximal distance within a clan");
    forage_cmd->add_option("--matriarch-update", matriarch_flag, "literal | convex");
    forage_cmd->add_option("--exploration-weighting", weighting_flag, "direct | inverse");
    forage_cmd->add_option("--rho", rho_flag, "pheromone decay (ACS)");
    forage_cmd->add_option("--n-ants", n_ants_flag, "ants per generation (ACS)");
    forage_cmd->add_option("--n-generations", n_generations_flag, "generations (ACS / PSO)");
    forage_cmd->add_option("--c1", c1_flag, "cognitive coefficient (PSO)");
    forage_cmd->add_option("--c2", c2_flag, "social coefficient (PSO)");
    forage_cmd->add_option("--inertia", inertia_flag, "velocity inertia (PSO)");
    forage_cmd->add_option("--n-particles", n_particles_flag, "particles (PSO)");
    forage_cmd->add_option("--max-path-depth", max_depth_flag, "surfing path cap (0 = none)");
    forage_cmd->add_option("--timing", timing_flag, "live | off");
    forage_cmd->add_option("--stopwords", stopwords_flag, "stopword file override");
    forage_cmd->add_option("--out", forage_args.report_out, "report base path");

    // synth
    SynthArgs synth_args;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a planted-topic corpus");
    synth_cmd->add_option("--topics", synth_args.topics, "number of planted topics");
    synth_cmd->add_option("--posts", synth_args.posts, "number of posts");
    synth_cmd->add_option("--users", synth_args.users, "number of users (0 = posts/20)");
    synth_cmd->add_option("--words-per-post", synth_args.words_per_post, "tokens per post");
    synth_cmd->add_option("--noise", synth_args.noise, "noise token ratio");
    synth_cmd->add_option("--follows", synth_args.follows, "structural follow records");
    synth_cmd->add_option("--seed", synth_args.seed, "random seed");
    synth_cmd->add_option("--out", synth_args.out, "output corpus path")->required();

    // report
    std::filesystem::path report_csv;
    auto* report_cmd = app.add_subcommand("report", "Summarize a written report CSV");
    report_cmd->add_option("report", report_csv, "report .csv path")->required();

    try {
        app.parse(argc, argv);

        if (*ingest_cmd) return cmd_ingest(ingest_corpus);
        if (*cluster_cmd) return cmd_cluster(cluster_args);
        if (*forage_cmd) {
            auto& o = forage_args.overrides;
            auto set = [&](const char* key, const std::string& v) { o.emplace_back(key, v); };
            if (!engine_flag.empty()) set("engine", engine_flag);
            if (!corpus_flag.empty()) set("corpus", corpus_flag);
            if (!interests_flag.empty()) set("interests", interests_flag);
            if (!interests_file_flag.empty()) set("interests_file", interests_file_flag);
            if (interest_top_n_flag) set("interest_top_n", std::to_string(*interest_top_n_flag));
            if (top_n_flag) set("top_n", std::to_string(*top_n_flag));
            if (seed_flag) set("seed", std::to_string(*seed_flag));
            if (!snapshot_flag.empty()) set("snapshot", snapshot_flag);
            if (no_cluster_flag) set("no_cluster", "true");
            if (k_flag) set("k", std::to_string(*k_flag));
            if (alpha_flag) set("alpha", format_double(*alpha_flag));
            if (beta_flag) set("beta", format_double(*beta_flag));
            if (n_clans_flag) set("n_clans", std::to_string(*n_clans_flag));
            if (n_per_clan_flag) set("n_per_clan", std::to_string(*n_per_clan_flag));
            if (max_gen_flag) set("max_gen", std::to_string(*max_gen_flag));
            if (q0_flag) set("q0", format_double(*q0_flag));
            if (t0_flag) set("t0", std::to_string(*t0_flag));
            if (dist_clan_flag) set("dist_clan", std::to_string(*dist_clan_flag));
            if (dist_elephant_flag) set("dist_elephant", std::to_string(*dist_elephant_flag));
            if (!matriarch_flag.empty()) set("matriarch_update", matriarch_flag);
            if (!weighting_flag.empty()) set("exploration_weighting", weighting_flag);
            if (rho_flag) set("rho", format_double(*rho_flag));
            if (n_ants_flag) set("n_ants", std::to_string(*n_ants_flag));
            if (n_generations_flag) set("n_generations", std::to_string(*n_generations_flag));
            if (c1_flag) set("c1", format_double(*c1_flag));
            if (c2_flag) set("c2", format_double(*c2_flag));
            if (inertia_flag) set("inertia", format_double(*inertia_flag));
            if (n_particles_flag) set("n_particles", std::to_string(*n_particles_flag));
            if (max_depth_flag) set("max_path_depth", std::to_string(*max_depth_flag));
            if (!timing_flag.empty()) set("timing", timing_flag);
            if (!stopwords_flag.empty()) set("stopwords", stopwords_flag);
            return cmd_forage(forage_args);
        }
        if (*synth_cmd) return cmd_synth(synth_args);
        if (*report_cmd) return cmd_report(report_csv);
        return 1;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
