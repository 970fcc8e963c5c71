#include "forage/synth.hpp"

#include <fstream>

#include "json.hpp"

#include "forage/error.hpp"
#include "forage/rng.hpp"

namespace forage {
namespace {

std::string two_digits(int v) {
    std::string s = std::to_string(v);
    return s.size() < 2 ? "0" + s : s;
}

}  // namespace

std::string synth_topic_word(int topic, int index) {
    return "t" + std::to_string(topic) + "w" + two_digits(index);
}

std::string synth_noise_word(int index) { return "nzw" + two_digits(index); }

std::string synth_topic_query(int topic, int n_words, int offset) {
    std::string q;
    for (int i = 0; i < n_words; ++i) {
        if (!q.empty()) q += ' ';
        q += synth_topic_word(topic, offset + i);
    }
    return q;
}

SynthCorpus synth_corpus(const SynthOptions& options) {
    if (options.n_topics < 1 || options.n_posts < 1) {
        throw UsageError("synthetic corpus needs at least one topic and one post");
    }
    const int n_users = options.n_users > 0 ? options.n_users : std::max(10, options.n_posts / 20);

    Rng rng(derive_seed(options.seed, 0x5717));
    SynthCorpus corpus;
    corpus.options = options;
    corpus.records.reserve(static_cast<std::size_t>(options.n_posts + options.n_follows));
    corpus.topic_of_post.reserve(static_cast<std::size_t>(options.n_posts));

    // Earlier post ids per topic, for reply targets.
    std::vector<std::vector<int>> posts_by_topic(static_cast<std::size_t>(options.n_topics));

    for (int i = 0; i < options.n_posts; ++i) {
        const int topic = i % options.n_topics;
        PostRecord rec;
        rec.id = "p" + std::to_string(i);
        rec.author = "u" + std::to_string(uniform_int(rng, 0, n_users - 1));

        const bool reply = i > 0 && uniform01(rng) < options.reply_ratio;
        if (reply) {
            int parent_topic = topic;
            if (options.n_topics > 1 && uniform01(rng) < options.cross_topic_reply) {
                parent_topic = static_cast<int>(uniform_int(rng, 0, options.n_topics - 1));
            }
            const auto& pool = posts_by_topic[static_cast<std::size_t>(parent_topic)].empty()
                                   ? posts_by_topic[static_cast<std::size_t>(topic)]
                                   : posts_by_topic[static_cast<std::size_t>(parent_topic)];
            if (!pool.empty()) {
                const int parent =
                    pool[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(pool.size()) - 1))];
                rec.kind = "reply";
                rec.parent_post = "p" + std::to_string(parent);
            }
        }
        if (rec.kind.empty()) rec.kind = "post";

        std::string text;
        for (int w = 0; w < options.words_per_post; ++w) {
            if (!text.empty()) text += ' ';
            // The first token always carries the topic.
            const bool noise = w > 0 && uniform01(rng) < options.noise_ratio;
            if (noise) {
                text += synth_noise_word(
                    static_cast<int>(uniform_int(rng, 0, std::max(1, options.noise_words) - 1)));
            } else {
                text += synth_topic_word(
                    topic, static_cast<int>(uniform_int(rng, 0, options.words_per_topic - 1)));
            }
        }
        rec.text = std::move(text);

        posts_by_topic[static_cast<std::size_t>(topic)].push_back(i);
        corpus.topic_of_post.push_back(topic);
        corpus.records.push_back(std::move(rec));
    }

    for (int f = 0; f < options.n_follows; ++f) {
        PostRecord rec;
        rec.id = "f" + std::to_string(f);
        rec.author = "u" + std::to_string(uniform_int(rng, 0, n_users - 1));
        rec.kind = "follow";
        rec.target_user = "u" + std::to_string(uniform_int(rng, 0, n_users - 1));
        corpus.records.push_back(std::move(rec));
    }
    return corpus;
}

void write_jsonl(std::span<const PostRecord> records, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write corpus file: " + path.string());
    for (const PostRecord& rec : records) {
        nlohmann::json line;
        line["id"] = rec.id;
        line["author"] = rec.author;
        line["kind"] = rec.kind;
        if (rec.target_user) line["target_user"] = *rec.target_user;
        if (rec.parent_post) line["parent_post"] = *rec.parent_post;
        line["text"] = rec.text;
        out << line.dump() << '\n';
    }
}

}  // namespace forage
