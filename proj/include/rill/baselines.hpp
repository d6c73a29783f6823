// baselines.hpp: sanity-floor predictors.

#pragma once

#include <span>
#include <vector>

#include "rill/classifier.hpp"

namespace rill {

/// Predicts the previous instance's true label (class 0 before any data,
/// via the uniform vector and lowest-index tie-break).
class NoChangeBaseline final : public Classifier {
public:
    explicit NoChangeBaseline(std::size_t num_classes) : num_classes_(num_classes) {}

    std::size_t num_classes() const override { return num_classes_; }

    void learn_one(const Instance& inst) override { last_label_ = inst.label; }

    std::vector<double> predict_proba(std::span<const double>) const override {
        if (!seen()) return uniform_proba(num_classes_);
        std::vector<double> p(num_classes_, 0.0);
        p[last_label_] = 1.0;
        return p;
    }

private:
    bool seen() const { return last_label_ != kNone; }

    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::size_t num_classes_;
    std::size_t last_label_ = kNone;
};

/// Predicts the most frequent label seen so far (class 0 on an empty model).
class MajorityClassBaseline final : public Classifier {
public:
    explicit MajorityClassBaseline(std::size_t num_classes)
        : num_classes_(num_classes), counts_(num_classes, 0.0) {}

    std::size_t num_classes() const override { return num_classes_; }

    void learn_one(const Instance& inst) override { counts_[inst.label] += 1.0; }

    std::vector<double> predict_proba(std::span<const double>) const override {
        std::vector<double> p(counts_);
        normalize_proba(p);
        return p;
    }

private:
    std::size_t num_classes_;
    std::vector<double> counts_;
};

} // namespace rill
