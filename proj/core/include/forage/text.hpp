#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "forage/graph.hpp"
#include "forage/term_vector.hpp"

namespace forage {

class StopwordSet {
public:
    // The bundled standard English list (~170 words).
    static const StopwordSet& bundled();
    // One word per line, UTF-8; '#' comments and blank lines ignored.
    static StopwordSet from_file(const std::filesystem::path& path);
    static StopwordSet from_words(std::span<const std::string> words);

    bool contains(std::string_view word) const;
    std::size_t size() const { return words_.size(); }

private:
    std::unordered_set<std::string> words_;
};

// Lowercases, strips platform artifacts (URLs, @handles, the '#' of
// hashtags), drops stopwords and applies Porter stemming. Invalid UTF-8
// bytes and punctuation act as token separators. Order is preserved.
std::vector<std::string> normalize_text(std::string_view raw,
                                        const StopwordSet& stopwords = StopwordSet::bundled());

// TF(t) = count(t) / len(terms). Throws UsageError on an empty list.
std::unordered_map<std::string, double> term_frequency(std::span<const std::string> terms);

// Term dictionary of a vectorized corpus: dense ids, document
// frequencies and the corpus size the IDF computation needs.
class Vocabulary {
public:
    std::optional<TermId> find(std::string_view term) const;
    const std::string& term(TermId id) const { return terms_[id]; }
    std::uint32_t doc_freq(TermId id) const { return doc_freq_[id]; }
    std::size_t size() const { return terms_.size(); }
    std::size_t corpus_size() const { return corpus_size_; }
    double idf_log_base() const { return idf_log_base_; }

private:
    friend Vocabulary tfidf_vectorize(SocialGraph&, const struct TfidfOptions&);
    std::unordered_map<std::string, TermId> index_;
    std::vector<std::string> terms_;
    std::vector<std::uint32_t> doc_freq_;
    std::size_t corpus_size_ = 0;
    double idf_log_base_ = 0.0;  // 0 means natural log
};

// IDF(t) = log(|corpus| / n_t) in the vocabulary's configured base.
// Throws UsageError for an unregistered term.
double inverse_document_frequency(const Vocabulary& vocab, std::string_view term);

struct TfidfOptions {
    double idf_log_base = 0.0;  // 0 -> natural log
    const StopwordSet* stopwords = nullptr;  // null -> bundled list
};

// Normalizes every content edge's text, builds the vocabulary and
// attaches w = TF * IDF vectors to the edges. Posts whose normalized
// term list is empty get the empty vector.
Vocabulary tfidf_vectorize(SocialGraph& g, const TfidfOptions& options = {});

// User interests as weighted terms (pure TF over the combined keyword +
// profile token list, truncated to the top_n highest-TF terms, ties
// broken by lexicographic term order).
struct InterestVector {
    std::vector<std::pair<std::string, double>> weighted_terms;  // TF order, then lex

    bool empty() const { return weighted_terms.empty(); }
    std::vector<std::string> terms() const;
    // Projection onto a corpus vocabulary; terms outside it are dropped.
    TermVector project(const Vocabulary& vocab) const;
};

// Throws UsageError when both inputs normalize to nothing.
InterestVector extract_interests(std::string_view keywords,
                                 std::string_view profile_text = {},
                                 std::size_t top_n = 10,
                                 const StopwordSet& stopwords = StopwordSet::bundled());

}  // namespace forage
