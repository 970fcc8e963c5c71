#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "forage/error.hpp"
#include "forage/experiment.hpp"
#include "forage/ingest.hpp"
#include "forage/report.hpp"
#include "forage/synth.hpp"

#include "test_util.hpp"

using namespace forage;
using namespace forage::testutil;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("forage_harness_" + name);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << content;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("post records parse from JSON lines") {
    std::string why;
    auto rec = parse_post_record(
        R"({"id":"p1","author":"ann","kind":"reply","parent_post":"p0","text":"hi"})", &why);
    REQUIRE(rec.has_value());
    CHECK(rec->id == "p1");
    CHECK(rec->author == "ann");
    CHECK(rec->kind == "reply");
    CHECK(rec->parent_post == "p0");
    CHECK(rec->text == "hi");

    CHECK_FALSE(parse_post_record("not json", &why).has_value());
    CHECK_FALSE(parse_post_record(R"({"author":"x","kind":"post"})", &why).has_value());
    CHECK_FALSE(parse_post_record(R"({"id":"a","author":"x","kind":"retweet"})", &why).has_value());
    CHECK_FALSE(parse_post_record(R"({"id":"a","author":"x","kind":"follow"})", &why).has_value());
    CHECK_FALSE(parse_post_record(R"({"id":"a","author":"","kind":"post"})", &why).has_value());
}

TEST_CASE("ingest builds a graph and counts malformed lines") {
    const auto path = temp_file("basic.jsonl");
    write_file(path,
               R"({"id":"p0","author":"ann","kind":"post","text":"hello world"})"
               "\n"
               R"({"id":"p1","author":"bob","kind":"reply","parent_post":"p0","text":"hi"})"
               "\n"
               R"({"id":"f0","author":"bob","kind":"follow","target_user":"ann"})"
               "\n");
    const IngestResult result = ingest(path);
    CHECK(result.stats.lines == 3);
    CHECK(result.stats.malformed == 0);
    CHECK(result.stats.content_edges == 2);
    CHECK(result.stats.structural_edges == 1);
    CHECK(result.graph.user_count() == 2);
    std::filesystem::remove(path);
}

TEST_CASE("ingest of an empty file yields an empty graph") {
    const auto path = temp_file("empty.jsonl");
    write_file(path, "");
    const IngestResult result = ingest(path);
    CHECK(result.stats.lines == 0);
    CHECK(result.graph.content_edge_count() == 0);
    std::filesystem::remove(path);
}

TEST_CASE("ingest skips duplicates and rejects over 10% malformed") {
    const auto path = temp_file("dups.jsonl");
    std::ostringstream body;
    for (int i = 0; i < 20; ++i) {
        body << R"({"id":"p)" << i << R"(","author":"u","kind":"post","text":"xx"})" << '\n';
    }
    body << R"({"id":"p0","author":"u","kind":"post","text":"dup"})" << '\n';
    write_file(path, body.str());
    const IngestResult result = ingest(path);  // 1 / 21 malformed is fine
    CHECK(result.stats.malformed == 1);
    CHECK(result.stats.content_edges == 20);

    std::ostringstream bad;
    bad << R"({"id":"p0","author":"u","kind":"post"})" << '\n';
    for (int i = 0; i < 5; ++i) bad << "garbage line\n";
    write_file(path, bad.str());
    CHECK_THROWS_AS(static_cast<void>(ingest(path)), DataError);
    std::filesystem::remove(path);
}

TEST_CASE("ingest accounts for every line of a 1e5-line synthetic file") {
    const auto path = temp_file("big.jsonl");
    SynthOptions options;
    options.n_posts = 99950;
    options.n_follows = 20;
    options.seed = 3;
    const SynthCorpus corpus = synth_corpus(options);
    write_jsonl(corpus.records, path);
    // Sprinkle malformed lines in an appended block (way below 10%).
    std::ofstream app(path, std::ios::app);
    for (int i = 0; i < 30; ++i) app << "{broken\n";
    app.close();

    const IngestResult result = ingest(path);
    CHECK(result.stats.lines == 100000);
    CHECK(result.stats.malformed == 30);
    CHECK(result.stats.content_edges + result.stats.structural_edges + result.stats.malformed ==
          result.stats.lines);
    std::filesystem::remove(path);
}

TEST_CASE("the file digest is stable and content-sensitive") {
    const auto path = temp_file("digest.jsonl");
    write_file(path, "abc\n");
    const auto d1 = fnv1a_file(path);
    const auto d2 = fnv1a_file(path);
    CHECK(d1 == d2);
    write_file(path, "abd\n");
    CHECK(fnv1a_file(path) != d1);
    std::filesystem::remove(path);
}

TEST_CASE("doubles round-trip through their formatted form") {
    Rng rng(19);
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(1.0) == "1");
    for (int i = 0; i < 100000; ++i) {
        double v;
        if (i % 3 == 0) {
            v = uniform01(rng);
        } else if (i % 3 == 1) {
            v = uniform01(rng) * 1e6;
        } else {
            v = uniform01(rng) * 1e-9;
        }
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("csv escaping quotes the tricky fields") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("has,comma") == "\"has,comma\"");
    CHECK(csv_escape("has\"quote") == "\"has\"\"quote\"");
    CHECK(csv_escape("line\nbreak") == "\"line\nbreak\"");
}

TEST_CASE("an empty report writes just the headers") {
    RunReport report;
    report.engine = "ehoif";
    const auto base = temp_file("empty_report");
    write_report(report, base);
    CHECK(read_file(base.string() + ".csv") ==
          "query,interest,interest_terms,score,wall_time_s,surfing_depth,"
          "convergence_generation,path_edges,path_texts\n");
    CHECK(read_file(base.string() + "_curves.csv") == "query,generation,best_fitness\n");
    for (const char* suffix : {".csv", "_curves.csv", "_params.txt"}) {
        std::filesystem::remove(base.string() + suffix);
    }
}

TEST_CASE("a one-query report carries its curve rows") {
    RunReport report;
    report.engine = "ehoif";
    report.seed = 9;
    QueryRow row;
    row.interest_input = "bitcoin, price";
    row.interest_terms = {"bitcoin", "price"};
    row.best_path.edges = {4, 2};
    row.best_path.similarities = {0.25, 0.5};
    row.best_path.fitness = 0.5;
    row.best_path_texts = {"text a", "text b"};
    row.score = 0.5;
    row.wall_seconds = 0.125;
    row.surfing_depth = 2;
    row.convergence_generation = 3;
    row.curve = {0.25, 0.4, 0.5, 0.5};
    report.rows.push_back(row);

    const auto base = temp_file("one_report");
    write_report(report, base);

    const std::string rows = read_file(base.string() + ".csv");
    CHECK(rows.find("\"bitcoin, price\"") != std::string::npos);
    CHECK(rows.find("0.125") != std::string::npos);
    CHECK(rows.find("4;2") != std::string::npos);

    const std::string curves = read_file(base.string() + "_curves.csv");
    int curve_lines = -1;  // discount the header
    for (const char c : curves) curve_lines += c == '\n';
    CHECK(curve_lines == 4);

    for (const char* suffix : {".csv", "_curves.csv", "_params.txt"}) {
        std::filesystem::remove(base.string() + suffix);
    }
}

TEST_CASE("config files parse and flags win") {
    const auto path = temp_file("config.cfg");
    write_file(path,
               "# comment\n"
               "engine = acsif\n"
               "alpha = 0.3\n"
               "n_ants = 25\n"
               "timing = off\n"
               "\n");
    ExperimentConfig config = load_config_file(path);
    CHECK(config.engine == "acsif");
    CHECK(config.acs.alpha == doctest::Approx(0.3));
    CHECK(config.acs.n_ants == 25);
    CHECK_FALSE(config.timing);

    // Command-line overrides are applied afterwards and take precedence.
    apply_config_entry(config, "alpha", "0.9");
    apply_config_entry(config, "engine", "psoif");
    CHECK(config.acs.alpha == doctest::Approx(0.9));
    CHECK(config.engine == "psoif");

    CHECK_THROWS_AS(apply_config_entry(config, "bogus_key", "1"), UsageError);
    CHECK_THROWS_AS(apply_config_entry(config, "alpha", "abc"), UsageError);
    std::filesystem::remove(path);
}

TEST_CASE("config rejects malformed lines") {
    const auto path = temp_file("badconfig.cfg");
    write_file(path, "this line has no equals\n");
    CHECK_THROWS_AS(static_cast<void>(load_config_file(path)), UsageError);
    std::filesystem::remove(path);
}

TEST_CASE("run_experiment rejects unknown engines and missing queries") {
    ExperimentConfig config;
    config.engine = "annealing";
    config.corpus = temp_file("whatever.jsonl");
    config.interests = {"x"};
    CHECK_THROWS_AS(static_cast<void>(run_experiment(config)), UsageError);

    config.engine = "ehoif";
    config.interests.clear();
    CHECK_THROWS_AS(static_cast<void>(run_experiment(config)), UsageError);
}

TEST_CASE("run_experiment drives every engine end to end") {
    const auto corpus_path = temp_file("experiment.jsonl");
    SynthOptions options;
    options.n_posts = 240;
    options.n_topics = 3;
    options.seed = 8;
    const SynthCorpus corpus = synth_corpus(options);
    write_jsonl(corpus.records, corpus_path);

    for (const std::string engine : {"ehoif", "eeholsif", "acsif", "psoif"}) {
        CAPTURE(engine);
        ExperimentConfig config;
        config.engine = engine;
        config.corpus = corpus_path;
        config.interests = {synth_topic_query(0, 3), synth_topic_query(1, 3)};
        config.seed = 11;
        config.cluster_k = 3;
        config.timing = false;
        // Desk-sized populations keep the unit suite fast.
        apply_config_entry(config, "n_clans", "2");
        apply_config_entry(config, "n_per_clan", "8");
        apply_config_entry(config, "max_gen", "6");
        apply_config_entry(config, "n_ants", "10");
        apply_config_entry(config, "n_generations", "6");
        apply_config_entry(config, "n_particles", "20");

        const RunReport report = run_experiment(config);
        CHECK(report.engine == engine);
        REQUIRE(report.rows.size() == 2);
        for (const QueryRow& row : report.rows) {
            CHECK(row.score >= 0.0);
            CHECK(row.score <= 1.0);
            CHECK(row.curve.size() == 6);
            CHECK(row.surfing_depth >= 1);
            CHECK(row.wall_seconds == 0.0);  // timing off
            CHECK(!row.best_path_texts.empty());
        }
    }
    std::filesystem::remove(corpus_path);
}

TEST_CASE("eeholsif builds, saves and reloads clustering snapshots") {
    const auto corpus_path = temp_file("snapshot_corpus.jsonl");
    const auto snapshot_path = temp_file("snapshot.json");
    std::filesystem::remove(snapshot_path);

    SynthOptions options;
    options.n_posts = 200;
    options.seed = 4;
    write_jsonl(synth_corpus(options).records, corpus_path);

    ExperimentConfig config;
    config.engine = "eeholsif";
    config.corpus = corpus_path;
    config.interests = {synth_topic_query(1, 2)};
    config.cluster_k = 3;
    config.snapshot = snapshot_path;
    config.timing = false;
    apply_config_entry(config, "n_clans", "2");
    apply_config_entry(config, "n_per_clan", "6");
    apply_config_entry(config, "max_gen", "4");

    const RunReport first = run_experiment(config);
    CHECK(std::filesystem::exists(snapshot_path));
    const RunReport second = run_experiment(config);  // loads the snapshot
    REQUIRE(first.rows.size() == second.rows.size());
    CHECK(first.rows[0].score == second.rows[0].score);

    // no_cluster demands an existing snapshot.
    std::filesystem::remove(snapshot_path);
    config.no_cluster = true;
    CHECK_THROWS_AS(static_cast<void>(run_experiment(config)), DataError);

    std::filesystem::remove(corpus_path);
}

TEST_CASE("reports are byte-identical under a fixed seed with timing off") {
    const auto corpus_path = temp_file("det_corpus.jsonl");
    SynthOptions options;
    options.n_posts = 150;
    options.seed = 31;
    write_jsonl(synth_corpus(options).records, corpus_path);

    ExperimentConfig config;
    config.engine = "acsif";
    config.corpus = corpus_path;
    config.interests = {synth_topic_query(0, 3)};
    config.seed = 2024;
    config.timing = false;
    apply_config_entry(config, "n_ants", "8");
    apply_config_entry(config, "n_generations", "5");

    const auto base1 = temp_file("det_report_1");
    const auto base2 = temp_file("det_report_2");
    write_report(run_experiment(config), base1);
    write_report(run_experiment(config), base2);
    for (const char* suffix : {".csv", "_curves.csv", "_params.txt"}) {
        CHECK(read_file(base1.string() + suffix) == read_file(base2.string() + suffix));
        std::filesystem::remove(base1.string() + suffix);
        std::filesystem::remove(base2.string() + suffix);
    }
    std::filesystem::remove(corpus_path);
}

TEST_CASE("the default eeholsif echo carries the tuned parameter set") {
    ExperimentConfig config;
    config.engine = "eeholsif";
    const auto params = echo_params(config);
    auto value_of = [&](const std::string& key) -> std::string {
        for (const auto& [k, v] : params) {
            if (k == key) return v;
        }
        return "<missing>";
    };
    CHECK(value_of("alpha") == "0.5");
    CHECK(value_of("beta") == "0.5");
    CHECK(value_of("n_clans") == "5");
    CHECK(value_of("n_per_clan") == "50");
    CHECK(value_of("max_gen") == "25");
    CHECK(value_of("q0") == "0.75");
    CHECK(value_of("t0") == "6");
}

TEST_CASE("a 70-interest batch produces 70 report rows") {
    const auto corpus_path = temp_file("batch.jsonl");
    const auto interests_path = temp_file("batch_interests.txt");
    SynthOptions options;
    options.n_posts = 300;
    options.seed = 6;
    write_jsonl(synth_corpus(options).records, corpus_path);
    {
        std::ofstream out(interests_path);
        for (int i = 0; i < 70; ++i) {
            out << synth_topic_query(i % 3, 1 + i % 3, i % 10) << '\n';
        }
    }

    ExperimentConfig config;
    config.engine = "acsif";
    config.corpus = corpus_path;
    config.interests_file = interests_path;
    config.seed = 70;
    config.timing = false;
    apply_config_entry(config, "n_ants", "5");
    apply_config_entry(config, "n_generations", "3");
    const RunReport report = run_experiment(config);
    CHECK(report.rows.size() == 70);

    std::filesystem::remove(corpus_path);
    std::filesystem::remove(interests_path);
}

TEST_CASE("synthetic corpora have the planted shape") {
    SynthOptions options;
    options.n_topics = 4;
    options.n_posts = 100;
    options.n_follows = 7;
    options.seed = 12;
    const SynthCorpus corpus = synth_corpus(options);
    REQUIRE(corpus.records.size() == 107);
    REQUIRE(corpus.topic_of_post.size() == 100);
    for (int i = 0; i < 100; ++i) {
        CHECK(corpus.topic_of_post[static_cast<std::size_t>(i)] == i % 4);
        // The first token always carries the topic vocabulary.
        const std::string prefix = "t" + std::to_string(i % 4) + "w";
        CHECK(corpus.records[static_cast<std::size_t>(i)].text.substr(0, prefix.size()) == prefix);
    }
    for (int i = 100; i < 107; ++i) {
        CHECK(corpus.records[static_cast<std::size_t>(i)].kind == "follow");
    }
}
