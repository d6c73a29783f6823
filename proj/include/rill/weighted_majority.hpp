// weighted_majority.hpp: the Weighted Majority expert-advice algorithm.

#pragma once

#include <memory>
#include <span>
#include <vector>

#include "rill/classifier.hpp"

namespace rill {

/// Weighted Majority over a fixed expert pool. Each expert that mispredicts
/// an instance has its weight multiplied by beta; experts keep learning on
/// every instance regardless. Weights only shrink, so they are renormalized
/// to sum 1 once the largest falls below 1e-100 to keep them representable.
class WeightedMajority final : public Classifier {
public:
    WeightedMajority(std::vector<ClassifierPtr> experts, double beta = 0.5)
        : experts_(std::move(experts)), beta_(beta) {
        if (experts_.empty()) throw ConfigError("weighted_majority: need at least one expert");
        if (!(beta_ > 0.0 && beta_ < 1.0)) {
            throw ConfigError("weighted_majority: beta must be in (0,1)");
        }
        weights_.assign(experts_.size(), 1.0);
    }

    std::size_t num_classes() const override { return experts_[0]->num_classes(); }

    void learn_one(const Instance& inst) override {
        for (std::size_t i = 0; i < experts_.size(); ++i) {
            if (experts_[i]->predict_one(inst.features) != inst.label) {
                weights_[i] *= beta_;
            }
        }
        double max_w = 0.0;
        for (double w : weights_) max_w = std::max(max_w, w);
        if (max_w < 1e-100) {
            double total = 0.0;
            for (double w : weights_) total += w;
            for (double& w : weights_) w = total > 0.0 ? w / total : 1.0;
            ++renormalizations_;
        }
        for (auto& e : experts_) e->learn_one(inst);
    }

    std::vector<double> predict_proba(std::span<const double> x) const override {
        std::vector<double> acc(num_classes(), 0.0);
        for (std::size_t i = 0; i < experts_.size(); ++i) {
            const auto p = experts_[i]->predict_proba(x);
            for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += weights_[i] * p[c];
        }
        normalize_proba(acc);
        return acc;
    }

    std::span<const double> weights() const { return weights_; }
    std::size_t renormalizations() const { return renormalizations_; }

private:
    std::vector<ClassifierPtr> experts_;
    std::vector<double> weights_;
    double beta_;
    std::size_t renormalizations_ = 0;
};

} // namespace rill
