// voting.hpp: fixed-weight vote over heterogeneous members.

#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rill/classifier.hpp"

namespace rill {

/// Combines arbitrary classifiers by a weighted average of their probability
/// vectors (soft vote, the default), or by counting argmax votes when
/// hard_vote is set. Every member trains on every instance.
class VotingEnsemble final : public Classifier {
public:
    VotingEnsemble(std::vector<ClassifierPtr> members, std::vector<double> weights = {},
                   bool hard_vote = false)
        : members_(std::move(members)), weights_(std::move(weights)), hard_vote_(hard_vote) {
        if (members_.empty()) throw ConfigError("vote: need at least one member");
        if (weights_.empty()) weights_.assign(members_.size(), 1.0);
        if (weights_.size() != members_.size()) {
            throw ConfigError("vote: one weight per member required");
        }
    }

    std::size_t num_classes() const override { return members_[0]->num_classes(); }

    void learn_one(const Instance& inst) override {
        for (auto& m : members_) m->learn_one(inst);
    }

    std::vector<double> predict_proba(std::span<const double> x) const override {
        std::vector<double> acc(num_classes(), 0.0);
        for (std::size_t i = 0; i < members_.size(); ++i) {
            if (hard_vote_) {
                acc[members_[i]->predict_one(x)] += weights_[i];
            } else {
                const auto p = members_[i]->predict_proba(x);
                for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += weights_[i] * p[c];
            }
        }
        normalize_proba(acc);
        return acc;
    }

    std::size_t size() const { return members_.size(); }
    const Classifier& member(std::size_t i) const { return *members_[i]; }

private:
    std::vector<ClassifierPtr> members_;
    std::vector<double> weights_;
    bool hard_vote_;
};

} // namespace rill
