#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace forage {

using TermId = std::uint32_t;

// Sparse nonnegative bag-of-words vector. Entries are kept sorted by
// term id, zero weights are never stored, and the Euclidean norm is
// cached at construction.
class TermVector {
public:
    using Entry = std::pair<TermId, double>;

    TermVector() = default;

    // Sorts, merges duplicate ids (weights added), drops zeros.
    // Throws UsageError on a negative weight.
    static TermVector from_entries(std::vector<Entry> entries);

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    double norm() const { return norm_; }
    double weight(TermId id) const;
    std::span<const Entry> entries() const { return entries_; }

    bool operator==(const TermVector& other) const { return entries_ == other.entries_; }

private:
    std::vector<Entry> entries_;
    double norm_ = 0.0;
};

double dot(const TermVector& a, const TermVector& b);

// Cosine similarity in [0,1] for nonnegative vectors; 0 if either side
// is empty.
double cosine_similarity(const TermVector& a, const TermVector& b);

// Straight-line distance over the union of supports.
double euclidean_distance(const TermVector& a, const TermVector& b);

// Running sum used for cluster means and interest aggregation.
class VectorAccumulator {
public:
    void add(const TermVector& v);
    std::size_t count() const { return count_; }
    TermVector mean() const;

private:
    std::unordered_map<TermId, double> sums_;
    std::size_t count_ = 0;
};

}  // namespace forage
