// bagging.hpp: online bagging (Oza & Russell style).

#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "rill/classifier.hpp"
#include "rill/random.hpp"

namespace rill {

/// Online bagging: every arriving instance trains each member k times with
/// k ~ Poisson(lambda), approximating bootstrap resampling on a stream.
/// Member random streams are split from the master seed by member index.
/// Prediction is the equal-weight average of member probability vectors.
class OzaBag final : public Classifier {
public:
    using MemberFactory = std::function<ClassifierPtr(std::size_t member_index,
                                                      std::uint64_t member_seed)>;

    OzaBag(std::size_t n_members, std::uint64_t seed, const MemberFactory& factory,
           double lambda = 1.0, bool force_unit_weight = false)
        : lambda_(lambda), force_unit_weight_(force_unit_weight) {
        if (n_members < 1) throw ConfigError("oza_bag: need at least one member");
        members_.reserve(n_members);
        for (std::size_t i = 0; i < n_members; ++i) {
            const std::uint64_t member_seed = mix_seed(seed, i);
            members_.push_back({factory(i, member_seed), RandomSource(member_seed), 0});
        }
        if (members_.empty() || members_[0].model == nullptr) {
            throw ConfigError("oza_bag: member factory returned null");
        }
    }

    std::size_t num_classes() const override { return members_[0].model->num_classes(); }

    void learn_one(const Instance& inst) override {
        for (Member& m : members_) {
            const int k = force_unit_weight_ ? 1 : poisson_sample(lambda_, m.rng);
            for (int r = 0; r < k; ++r) m.model->learn_one(inst);
            m.updates += static_cast<std::uint64_t>(k);
        }
    }

    std::vector<double> predict_proba(std::span<const double> x) const override {
        std::vector<double> acc(num_classes(), 0.0);
        for (const Member& m : members_) {
            const auto p = m.model->predict_proba(x);
            for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += p[c];
        }
        normalize_proba(acc);
        return acc;
    }

    std::size_t size() const { return members_.size(); }
    std::uint64_t member_updates(std::size_t i) const { return members_[i].updates; }
    const Classifier& member(std::size_t i) const { return *members_[i].model; }

private:
    struct Member {
        ClassifierPtr model;
        RandomSource rng;
        std::uint64_t updates;
    };

    double lambda_;
    bool force_unit_weight_;
    std::vector<Member> members_;
};

} // namespace rill
