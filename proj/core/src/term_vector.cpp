#include "forage/term_vector.hpp"

#include <algorithm>
#include <cmath>

#include "forage/error.hpp"

namespace forage {

TermVector TermVector::from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });

    TermVector v;
    v.entries_.reserve(entries.size());
    for (const Entry& e : entries) {
        if (e.second < 0.0) {
            throw UsageError("term vector weight must be nonnegative");
        }
        if (!v.entries_.empty() && v.entries_.back().first == e.first) {
            v.entries_.back().second += e.second;
        } else {
            v.entries_.push_back(e);
        }
    }
    std::erase_if(v.entries_, [](const Entry& e) { return e.second == 0.0; });

    double sq = 0.0;
    for (const Entry& e : v.entries_) sq += e.second * e.second;
    v.norm_ = std::sqrt(sq);
    return v;
}

double TermVector::weight(TermId id) const {
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), id,
        [](const Entry& e, TermId key) { return e.first < key; });
    if (it != entries_.end() && it->first == id) return it->second;
    return 0.0;
}

double dot(const TermVector& a, const TermVector& b) {
    double sum = 0.0;
    auto ia = a.entries().begin();
    auto ib = b.entries().begin();
    const auto ea = a.entries().end();
    const auto eb = b.entries().end();
    while (ia != ea && ib != eb) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            sum += ia->second * ib->second;
            ++ia;
            ++ib;
        }
    }
    return sum;
}

double cosine_similarity(const TermVector& a, const TermVector& b) {
    if (a.empty() || b.empty()) return 0.0;
    const double d = dot(a, b) / (a.norm() * b.norm());
    // Guard float drift at the boundaries.
    return std::clamp(d, 0.0, 1.0);
}

double euclidean_distance(const TermVector& a, const TermVector& b) {
    double sq = 0.0;
    auto ia = a.entries().begin();
    auto ib = b.entries().begin();
    const auto ea = a.entries().end();
    const auto eb = b.entries().end();
    while (ia != ea || ib != eb) {
        double diff;
        if (ib == eb || (ia != ea && ia->first < ib->first)) {
            diff = ia->second;
            ++ia;
        } else if (ia == ea || ib->first < ia->first) {
            diff = ib->second;
            ++ib;
        } else {
            diff = ia->second - ib->second;
            ++ia;
            ++ib;
        }
        sq += diff * diff;
    }
    return std::sqrt(sq);
}

void VectorAccumulator::add(const TermVector& v) {
    for (const auto& [id, w] : v.entries()) sums_[id] += w;
    ++count_;
}

TermVector VectorAccumulator::mean() const {
    if (count_ == 0) return {};
    std::vector<TermVector::Entry> entries;
    entries.reserve(sums_.size());
    const double inv = 1.0 / static_cast<double>(count_);
    for (const auto& [id, sum] : sums_) entries.emplace_back(id, sum * inv);
    return TermVector::from_entries(std::move(entries));
}

}  // namespace forage
