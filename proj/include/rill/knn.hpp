// knn.hpp: sliding-window k-nearest-neighbors.

#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "rill/classifier.hpp"

namespace rill {

/// KNN over a bounded FIFO window of the most recent (features, label) pairs.
/// Neighbors are ranked by squared Euclidean distance; exact distance ties go
/// to the older instance. Class probabilities are plain neighbor vote shares.
class SlidingWindowKnn final : public Classifier {
public:
    SlidingWindowKnn(std::size_t num_classes, std::size_t k = 10, std::size_t window = 1000)
        : num_classes_(num_classes), k_(k), capacity_(window) {
        if (k_ == 0) throw DomainError("knn: k must be positive");
        if (capacity_ == 0) throw DomainError("knn: window must be positive");
    }

    std::size_t num_classes() const override { return num_classes_; }

    void learn_one(const Instance& inst) override {
        if (window_.size() == capacity_) window_.pop_front(); // evict strictly oldest
        window_.push_back(Entry{inst.features, inst.label, next_age_++});
    }

    std::vector<double> predict_proba(std::span<const double> x) const override {
        if (window_.empty()) return uniform_proba(num_classes_);
        scratch_.clear();
        scratch_.reserve(window_.size());
        for (const Entry& e : window_) {
            double d2 = 0.0;
            for (std::size_t j = 0; j < e.features.size(); ++j) {
                const double d = e.features[j] - x[j];
                d2 += d * d;
            }
            scratch_.push_back({d2, e.age, e.label});
        }
        const std::size_t take = std::min<std::size_t>(k_, scratch_.size());
        std::partial_sort(scratch_.begin(), scratch_.begin() + take, scratch_.end(),
                          [](const Neighbor& a, const Neighbor& b) {
                              if (a.d2 != b.d2) return a.d2 < b.d2;
                              return a.age < b.age;
                          });
        std::vector<double> proba(num_classes_, 0.0);
        for (std::size_t i = 0; i < take; ++i) {
            proba[scratch_[i].label] += 1.0 / static_cast<double>(take);
        }
        return proba;
    }

    std::size_t window_size() const { return window_.size(); }

private:
    struct Entry {
        std::vector<double> features;
        std::size_t label;
        std::uint64_t age;
    };
    struct Neighbor {
        double d2;
        std::uint64_t age;
        std::size_t label;
    };

    std::size_t num_classes_;
    std::size_t k_;
    std::size_t capacity_;
    std::deque<Entry> window_;
    std::uint64_t next_age_ = 0;
    mutable std::vector<Neighbor> scratch_;
};

} // namespace rill
