#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "forage/graph.hpp"

namespace forage {

// Planted-topic corpus: n_topics disjoint vocabularies plus a shared
// noise vocabulary, posts assigned to topics round-robin, replies mostly
// within the topic. Tokens are digit-bearing so they survive the text
// pipeline unchanged.
struct SynthOptions {
    int n_topics = 3;
    int n_posts = 4000;
    int n_users = 0;          // 0 -> max(10, n_posts / 20)
    int words_per_topic = 12;
    int words_per_post = 12;
    int noise_words = 40;
    double noise_ratio = 0.1;        // chance a token comes from the noise vocabulary
    double reply_ratio = 0.6;        // chance a post replies to an earlier post
    double cross_topic_reply = 0.1;  // chance a reply crosses topics
    int n_follows = 0;               // structural follow records appended at the end
    std::uint64_t seed = 0;
};

struct SynthCorpus {
    std::vector<PostRecord> records;  // posts first, follows after
    std::vector<int> topic_of_post;   // aligned with content edge ids
    SynthOptions options;
};

SynthCorpus synth_corpus(const SynthOptions& options);

// Deterministic vocabulary helpers shared with tests.
std::string synth_topic_word(int topic, int index);
std::string synth_noise_word(int index);

// A query string built from one topic's vocabulary, offset to vary it.
std::string synth_topic_query(int topic, int n_words, int offset = 0);

void write_jsonl(std::span<const PostRecord> records, const std::filesystem::path& path);

}  // namespace forage
