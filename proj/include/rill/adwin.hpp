// adwin.hpp: ADWIN adaptive-windowing change detector.
//
// The window is an exponential histogram: level L holds buckets that each
// aggregate 2^L values as a plain (sum, implicit count) pair, at most
// max_buckets per level. Inserting one bucket beyond that merges the two
// oldest buckets of the level into a single bucket one level up, so memory
// is O(max_buckets * log n). Merges conserve sum and count exactly for 0/1
// inputs and to rounding for reals, which keeps the window mean exact.

#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <vector>

#include "rill/errors.hpp"

namespace rill {

/// Threshold for declaring the split (W0, W1) significant:
///   eps = sqrt(ln(4 * total_n / delta) / (2 m)),
/// with m the harmonic mean count 1 / (1/n0 + 1/n1). The delta / total_n
/// factor is the union-bound correction over split points.
inline double adwin_cut_threshold(std::uint64_t n0, std::uint64_t n1, std::uint64_t total_n,
                                  double delta) {
    const double m = 1.0 / (1.0 / static_cast<double>(n0) + 1.0 / static_cast<double>(n1));
    const double log_term = std::log(4.0 * static_cast<double>(total_n) / delta);
    return std::sqrt(log_term / (2.0 * m));
}

class Adwin {
public:
    explicit Adwin(double delta = 0.002, std::size_t max_buckets = 5)
        : delta_(delta), max_buckets_(max_buckets) {
        if (!(delta_ > 0.0 && delta_ < 1.0)) throw DomainError("adwin: delta must be in (0,1)");
        if (max_buckets_ < 1) throw DomainError("adwin: max_buckets must be >= 1");
    }

    /// Appends a value in [0,1] and runs the cut test. Returns true when any
    /// old data was dropped on this call.
    bool add(double value) {
        if (!(value >= 0.0 && value <= 1.0)) {
            throw DomainError("adwin: monitored values must lie in [0,1]");
        }
        insert_bucket(value);
        return detect_and_shrink();
    }

    std::uint64_t size() const { return total_count_; }

    double sum() const { return total_sum_; }

    double mean() const {
        if (total_count_ == 0) throw EmptyStateError("adwin: mean of an empty window");
        return total_sum_ / static_cast<double>(total_count_);
    }

    std::size_t bucket_count() const {
        std::size_t n = 0;
        for (const auto& level : levels_) n += level.size();
        return n;
    }

    double delta() const { return delta_; }

private:
    void insert_bucket(double value) {
        if (levels_.empty()) levels_.emplace_back();
        levels_[0].push_back(value);
        total_count_ += 1;
        total_sum_ += value;
        // cascade merges upward; the merged pair becomes the newest bucket of
        // the next level because everything already there is older
        for (std::size_t lvl = 0; lvl < levels_.size(); ++lvl) {
            if (levels_[lvl].size() <= max_buckets_) break;
            const double merged = levels_[lvl].front() + *(levels_[lvl].begin() + 1);
            levels_[lvl].pop_front();
            levels_[lvl].pop_front();
            if (lvl + 1 == levels_.size()) levels_.emplace_back();
            levels_[lvl + 1].push_back(merged);
        }
    }

    /// Scans every split of the window into an older part W0 and newer part
    /// W1 (oldest to newest); while some split's means differ by at least the
    /// cut threshold, the single oldest bucket is dropped and the scan
    /// restarts. The newest bucket always survives.
    bool detect_and_shrink() {
        bool dropped_any = false;
        while (bucket_count() >= 2 && scan_and_drop_once()) {
            dropped_any = true;
        }
        return dropped_any;
    }

    /// One pass over the split points; drops the oldest bucket and returns
    /// true on the first split whose means differ significantly.
    bool scan_and_drop_once() {
        std::uint64_t n0 = 0;
        double sum0 = 0.0;
        for (std::size_t lvl = levels_.size(); lvl-- > 0;) {
            const std::uint64_t level_count = std::uint64_t{1} << lvl;
            for (const double bucket_sum : levels_[lvl]) {
                n0 += level_count;
                sum0 += bucket_sum;
                const std::uint64_t n1 = total_count_ - n0;
                if (n1 == 0) return false; // W1 must be non-empty
                const double mean0 = sum0 / static_cast<double>(n0);
                const double mean1 = (total_sum_ - sum0) / static_cast<double>(n1);
                if (std::fabs(mean0 - mean1) >=
                    adwin_cut_threshold(n0, n1, total_count_, delta_)) {
                    drop_oldest_bucket();
                    return true;
                }
            }
        }
        return false;
    }

    void drop_oldest_bucket() {
        for (std::size_t lvl_rev = levels_.size(); lvl_rev-- > 0;) {
            if (levels_[lvl_rev].empty()) continue;
            total_count_ -= std::uint64_t{1} << lvl_rev;
            total_sum_ -= levels_[lvl_rev].front();
            levels_[lvl_rev].pop_front();
            while (!levels_.empty() && levels_.back().empty()) levels_.pop_back();
            return;
        }
    }

    double delta_;
    std::size_t max_buckets_;
    std::vector<std::deque<double>> levels_; // levels_[L]: bucket sums of 2^L values, oldest first
    std::uint64_t total_count_ = 0;
    double total_sum_ = 0.0;
};

} // namespace rill
