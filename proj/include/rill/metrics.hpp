// metrics.hpp: confusion matrix, binary collapse and the Acc/P/R/F1 metrics.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rill/errors.hpp"

namespace rill {

/// C x C prediction tally, counts[actual][predicted].
class ConfusionMatrix {
public:
    explicit ConfusionMatrix(std::size_t num_classes)
        : num_classes_(num_classes), counts_(num_classes * num_classes, 0) {}

    void update(std::size_t actual, std::size_t predicted) {
        if (actual >= num_classes_ || predicted >= num_classes_) {
            throw DomainError("confusion matrix: class index out of range");
        }
        counts_[actual * num_classes_ + predicted] += 1;
        total_ += 1;
    }

    std::uint64_t at(std::size_t actual, std::size_t predicted) const {
        return counts_[actual * num_classes_ + predicted];
    }

    std::uint64_t total() const { return total_; }
    std::size_t num_classes() const { return num_classes_; }

private:
    std::size_t num_classes_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

struct BinaryCounts {
    std::uint64_t tp = 0; // attack predicted as any attack class
    std::uint64_t fn = 0; // attack predicted normal
    std::uint64_t fp = 0; // normal predicted as any attack
    std::uint64_t tn = 0; // normal predicted normal

    std::uint64_t total() const { return tp + fn + fp + tn; }
};

/// Collapses the multiclass matrix to attack-vs-normal. An attack
/// misclassified as a different attack still counts as detected (TP).
inline BinaryCounts binary_collapse(const ConfusionMatrix& cm, std::size_t normal_class) {
    if (cm.num_classes() < 2) throw DomainError("binary collapse needs at least two classes");
    if (normal_class >= cm.num_classes()) throw DomainError("normal class index out of range");
    BinaryCounts b;
    for (std::size_t a = 0; a < cm.num_classes(); ++a) {
        for (std::size_t p = 0; p < cm.num_classes(); ++p) {
            const std::uint64_t n = cm.at(a, p);
            if (a == normal_class) {
                if (p == normal_class) {
                    b.tn += n;
                } else {
                    b.fp += n;
                }
            } else {
                if (p == normal_class) {
                    b.fn += n;
                } else {
                    b.tp += n;
                }
            }
        }
    }
    return b;
}

/// Metric values in [0,1]; a field is empty when its denominator is zero.
/// Undefined never silently becomes zero.
struct MetricsReport {
    std::optional<double> accuracy;
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f1;
};

inline MetricsReport compute_metrics(const BinaryCounts& b) {
    MetricsReport r;
    const std::uint64_t total = b.total();
    if (total == 0) return r; // undefined-metrics marker
    r.accuracy = static_cast<double>(b.tp + b.tn) / static_cast<double>(total);
    if (b.tp + b.fp > 0) {
        r.precision = static_cast<double>(b.tp) / static_cast<double>(b.tp + b.fp);
    }
    if (b.tp + b.fn > 0) {
        r.recall = static_cast<double>(b.tp) / static_cast<double>(b.tp + b.fn);
    }
    if (r.precision && r.recall && (*r.precision + *r.recall) > 0.0) {
        r.f1 = 2.0 * *r.precision * *r.recall / (*r.precision + *r.recall);
    }
    return r;
}

struct PerClassMetrics {
    std::vector<MetricsReport> per_class; // one-vs-rest, class order
    MetricsReport macro;                  // unweighted mean over defined values
};

inline PerClassMetrics per_class_metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw EmptyStateError("per-class metrics of an empty matrix");
    PerClassMetrics out;
    const std::size_t C = cm.num_classes();
    for (std::size_t c = 0; c < C; ++c) {
        BinaryCounts b;
        b.tp = cm.at(c, c);
        std::uint64_t row = 0;
        std::uint64_t col = 0;
        for (std::size_t i = 0; i < C; ++i) {
            row += cm.at(c, i);
            col += cm.at(i, c);
        }
        b.fn = row - b.tp;
        b.fp = col - b.tp;
        b.tn = cm.total() - row - col + b.tp;
        out.per_class.push_back(compute_metrics(b));
    }
    const auto mean_of = [&](auto field) -> std::optional<double> {
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto& m : out.per_class) {
            if (m.*field) {
                sum += *(m.*field);
                ++n;
            }
        }
        if (n == 0) return std::nullopt;
        return sum / static_cast<double>(n);
    };
    out.macro.accuracy = mean_of(&MetricsReport::accuracy);
    out.macro.precision = mean_of(&MetricsReport::precision);
    out.macro.recall = mean_of(&MetricsReport::recall);
    out.macro.f1 = mean_of(&MetricsReport::f1);
    return out;
}

struct WindowPoint {
    std::size_t end_index; // one past the last instance of the window
    double accuracy;
};

/// Accuracy over consecutive non-overlapping windows; the final partial
/// window is reported with its actual count.
inline std::vector<WindowPoint> windowed_accuracy(
    std::span<const std::pair<std::uint32_t, std::uint32_t>> log, std::size_t window) {
    if (window == 0) throw DomainError("windowed accuracy: window must be positive");
    std::vector<WindowPoint> series;
    std::size_t correct = 0;
    std::size_t filled = 0;
    for (std::size_t i = 0; i < log.size(); ++i) {
        if (log[i].first == log[i].second) ++correct;
        ++filled;
        if (filled == window || i + 1 == log.size()) {
            series.push_back({i + 1, static_cast<double>(correct) / static_cast<double>(filled)});
            correct = 0;
            filled = 0;
        }
    }
    return series;
}

} // namespace rill
