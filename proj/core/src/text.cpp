#include "forage/text.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "forage/error.hpp"
#include "forage/porter_stemmer.hpp"

namespace forage {
namespace {

bool is_ascii_alnum(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

char ascii_lower(unsigned char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

// Drops malformed UTF-8 byte sequences; well-formed multi-byte
// characters are kept (they become token separators later).
std::string drop_invalid_utf8(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    std::size_t i = 0;
    while (i < raw.size()) {
        const unsigned char c = static_cast<unsigned char>(raw[i]);
        std::size_t len = 0;
        if (c < 0x80) {
            len = 1;
        } else if ((c & 0xE0) == 0xC0) {
            len = 2;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
        } else {
            ++i;  // stray continuation or invalid lead byte
            continue;
        }
        if (i + len > raw.size()) {
            ++i;
            continue;
        }
        bool ok = true;
        for (std::size_t k = 1; k < len; ++k) {
            if ((static_cast<unsigned char>(raw[i + k]) & 0xC0) != 0x80) {
                ok = false;
                break;
            }
        }
        if (!ok) {
            ++i;
            continue;
        }
        out.append(raw.substr(i, len));
        i += len;
    }
    return out;
}

bool is_url_start(std::string_view s, std::size_t i) {
    auto starts = [&](std::string_view prefix) {
        if (i + prefix.size() > s.size()) return false;
        for (std::size_t k = 0; k < prefix.size(); ++k) {
            if (ascii_lower(static_cast<unsigned char>(s[i + k])) != prefix[k]) return false;
        }
        return true;
    };
    return starts("http://") || starts("https://") || starts("www.");
}

}  // namespace

std::vector<std::string> normalize_text(std::string_view raw, const StopwordSet& stopwords) {
    const std::string text = drop_invalid_utf8(raw);
    std::vector<std::string> terms;

    std::size_t i = 0;
    std::string token;
    while (i < text.size()) {
        const unsigned char c = static_cast<unsigned char>(text[i]);
        if (is_url_start(text, i)) {
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
            continue;
        }
        if (c == '@') {
            ++i;
            while (i < text.size() && (is_ascii_alnum(static_cast<unsigned char>(text[i])) ||
                                       text[i] == '_')) {
                ++i;
            }
            continue;
        }
        if (!is_ascii_alnum(c)) {
            ++i;  // separators, including '#' markers and non-ASCII text
            continue;
        }
        token.clear();
        while (i < text.size() && is_ascii_alnum(static_cast<unsigned char>(text[i]))) {
            token.push_back(ascii_lower(static_cast<unsigned char>(text[i])));
            ++i;
        }
        if (stopwords.contains(token)) continue;
        terms.push_back(porter_stem(token));
    }
    return terms;
}

std::unordered_map<std::string, double> term_frequency(std::span<const std::string> terms) {
    if (terms.empty()) throw UsageError("term frequency of an empty term list");
    std::unordered_map<std::string, double> tf;
    for (const std::string& t : terms) tf[t] += 1.0;
    const double inv = 1.0 / static_cast<double>(terms.size());
    for (auto& [_, v] : tf) v *= inv;
    return tf;
}

std::optional<TermId> Vocabulary::find(std::string_view term) const {
    auto it = index_.find(std::string(term));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

double inverse_document_frequency(const Vocabulary& vocab, std::string_view term) {
    const auto id = vocab.find(term);
    if (!id) throw UsageError("term '" + std::string(term) + "' is not in the vocabulary");
    double idf = std::log(static_cast<double>(vocab.corpus_size()) /
                          static_cast<double>(vocab.doc_freq(*id)));
    if (vocab.idf_log_base() > 0.0) idf /= std::log(vocab.idf_log_base());
    return idf;
}

Vocabulary tfidf_vectorize(SocialGraph& g, const TfidfOptions& options) {
    const StopwordSet& stops = options.stopwords ? *options.stopwords : StopwordSet::bundled();

    Vocabulary vocab;
    vocab.idf_log_base_ = options.idf_log_base;
    vocab.corpus_size_ = g.content_edge_count();

    // Pass 1: normalize, register terms, count document frequencies.
    std::vector<std::vector<std::string>> edge_terms(g.content_edge_count());
    for (const ContentEdge& e : g.content_edges()) {
        edge_terms[e.id] = normalize_text(e.raw_text, stops);
        std::vector<std::string_view> seen;
        for (const std::string& t : edge_terms[e.id]) {
            auto it = vocab.index_.find(t);
            if (it == vocab.index_.end()) {
                const auto id = static_cast<TermId>(vocab.terms_.size());
                vocab.index_.emplace(t, id);
                vocab.terms_.push_back(t);
                vocab.doc_freq_.push_back(0);
            }
            if (std::find(seen.begin(), seen.end(), std::string_view(t)) == seen.end()) {
                seen.push_back(t);
                ++vocab.doc_freq_[vocab.index_[t]];
            }
        }
    }

    // Pass 2: w = TF * IDF per edge.
    for (EdgeId e = 0; e < g.content_edge_count(); ++e) {
        const auto& terms = edge_terms[e];
        if (terms.empty()) {
            g.set_vector(e, {});
            continue;
        }
        const auto tf = term_frequency(terms);
        std::vector<TermVector::Entry> entries;
        entries.reserve(tf.size());
        for (const auto& [term, f] : tf) {
            const TermId id = vocab.index_.at(term);
            double idf = std::log(static_cast<double>(vocab.corpus_size_) /
                                  static_cast<double>(vocab.doc_freq_[id]));
            if (vocab.idf_log_base_ > 0.0) idf /= std::log(vocab.idf_log_base_);
            entries.emplace_back(id, f * idf);
        }
        g.set_vector(e, TermVector::from_entries(std::move(entries)));
    }
    return vocab;
}

std::vector<std::string> InterestVector::terms() const {
    std::vector<std::string> out;
    out.reserve(weighted_terms.size());
    for (const auto& [t, _] : weighted_terms) out.push_back(t);
    return out;
}

TermVector InterestVector::project(const Vocabulary& vocab) const {
    std::vector<TermVector::Entry> entries;
    for (const auto& [term, w] : weighted_terms) {
        if (const auto id = vocab.find(term)) entries.emplace_back(*id, w);
    }
    return TermVector::from_entries(std::move(entries));
}

InterestVector extract_interests(std::string_view keywords, std::string_view profile_text,
                                 std::size_t top_n, const StopwordSet& stopwords) {
    std::vector<std::string> combined = normalize_text(keywords, stopwords);
    const std::vector<std::string> profile = normalize_text(profile_text, stopwords);
    combined.insert(combined.end(), profile.begin(), profile.end());
    if (combined.empty()) {
        throw UsageError("interest extraction produced no terms");
    }

    const auto tf = term_frequency(combined);
    std::vector<std::pair<std::string, double>> ranked(tf.begin(), tf.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranked.size() > top_n) ranked.resize(top_n);

    InterestVector iv;
    iv.weighted_terms = std::move(ranked);
    return iv;
}

}  // namespace forage
