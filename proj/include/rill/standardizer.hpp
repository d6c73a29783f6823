// standardizer.hpp: online feature standardization.

#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "rill/classifier.hpp"
#include "rill/running_stats.hpp"

namespace rill {

/// Keeps running per-feature mean/variance and maps x to
/// (x - mean) / sqrt(var + epsilon). With fewer than two observations the
/// transform is the identity.
class OnlineStandardizer {
public:
    explicit OnlineStandardizer(std::size_t num_features, double epsilon = 1e-12)
        : stats_(num_features), epsilon_(epsilon) {}

    void update(std::span<const double> x) {
        for (std::size_t j = 0; j < stats_.size(); ++j) stats_[j].add(x[j]);
        ++observed_;
    }

    std::vector<double> transform(std::span<const double> x) const {
        std::vector<double> out(x.begin(), x.end());
        if (observed_ < 2) return out;
        for (std::size_t j = 0; j < stats_.size(); ++j) {
            out[j] = (x[j] - stats_[j].mean) / std::sqrt(stats_[j].sample_variance() + epsilon_);
        }
        return out;
    }

    std::size_t observed() const { return observed_; }

private:
    std::vector<RunningMoments> stats_;
    double epsilon_;
    std::size_t observed_ = 0;
};

/// Pipeline wrapper: standardizes features before they reach the inner
/// learner. On learn, the scaler is updated first, so the instance is
/// transformed with statistics that include itself.
class StandardizedClassifier final : public Classifier {
public:
    StandardizedClassifier(std::size_t num_features, ClassifierPtr inner, double epsilon = 1e-12)
        : scaler_(num_features, epsilon), inner_(std::move(inner)) {}

    std::size_t num_classes() const override { return inner_->num_classes(); }

    void learn_one(const Instance& inst) override {
        scaler_.update(inst.features);
        Instance scaled = inst;
        scaled.features = scaler_.transform(inst.features);
        inner_->learn_one(scaled);
    }

    std::vector<double> predict_proba(std::span<const double> x) const override {
        return inner_->predict_proba(scaler_.transform(x));
    }

    const Classifier& inner() const { return *inner_; }

private:
    OnlineStandardizer scaler_;
    ClassifierPtr inner_;
};

} // namespace rill
