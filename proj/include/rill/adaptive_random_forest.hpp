// adaptive_random_forest.hpp: online random forest with per-member drift
// recovery.
//
// Each member is a Hoeffding tree restricted to a per-leaf random feature
// subset, trained k ~ Poisson(6) times per instance. A pair of ADWIN
// detectors watches the member's prequential 0/1 error: a warning starts a
// background tree that trains alongside without voting; a drift signal swaps
// the background tree in (or restarts from scratch). Votes are weighted by
// each member's running prequential accuracy.

#pragma once

#include <cmath>
#include <memory>
#include <span>
#include <vector>

#include "rill/adwin.hpp"
#include "rill/classifier.hpp"
#include "rill/hoeffding_tree.hpp"
#include "rill/random.hpp"

namespace rill {

struct ArfConfig {
    std::size_t n_members = 10;
    double lambda = 6.0;
    std::size_t subspace_size = 0; // 0 -> floor(sqrt(num_features)) + 1
    double warning_delta = 0.01;
    double drift_delta = 0.001;
    TreeConfig tree; // num_classes/num_features required; subspace filled in
};

class AdaptiveRandomForest final : public Classifier {
public:
    AdaptiveRandomForest(ArfConfig config, std::uint64_t seed) : cfg_(config) {
        if (cfg_.n_members < 1) throw ConfigError("arf: need at least one member");
        if (cfg_.subspace_size == 0) {
            cfg_.subspace_size =
                static_cast<std::size_t>(std::sqrt(static_cast<double>(cfg_.tree.num_features))) +
                1;
        }
        cfg_.tree.adaptive = false;
        cfg_.tree.subspace_size = std::min(cfg_.subspace_size, cfg_.tree.num_features);
        members_.reserve(cfg_.n_members);
        for (std::size_t i = 0; i < cfg_.n_members; ++i) {
            members_.push_back(std::make_unique<Member>(cfg_, mix_seed(seed, i)));
        }
    }

    std::size_t num_classes() const override { return cfg_.tree.num_classes; }

    void learn_one(const Instance& inst) override {
        for (auto& member : members_) {
            member->learn_one(inst, cfg_);
        }
    }

    /// Accuracy-weighted soft vote over foreground trees only.
    std::vector<double> predict_proba(std::span<const double> x) const override {
        std::vector<double> acc(num_classes(), 0.0);
        for (const auto& member : members_) {
            const double w = member->vote_weight();
            const auto p = member->tree->predict_proba(x);
            for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += w * p[c];
        }
        normalize_proba(acc);
        return acc;
    }

    std::size_t size() const { return members_.size(); }
    std::size_t replacements() const {
        std::size_t n = 0;
        for (const auto& m : members_) n += m->replacements;
        return n;
    }
    std::size_t warnings() const {
        std::size_t n = 0;
        for (const auto& m : members_) n += m->warnings;
        return n;
    }

private:
    struct Member {
        Member(const ArfConfig& cfg, std::uint64_t seed)
            : rng(seed),
              warning(cfg.warning_delta),
              drift(cfg.drift_delta),
              tree(std::make_unique<HoeffdingTree>(cfg.tree, &rng)) {}

        void learn_one(const Instance& inst, const ArfConfig& cfg) {
            const std::size_t predicted = tree->predict_one(inst.features);
            seen += 1.0;
            if (predicted == inst.label) correct += 1.0;
            const double err = predicted == inst.label ? 0.0 : 1.0;

            const int k = poisson_sample(cfg.lambda, rng);
            for (int r = 0; r < k; ++r) {
                tree->learn_one(inst);
                if (background) background->learn_one(inst);
            }

            if (signals_change(warning, err) && !background) {
                background = std::make_unique<HoeffdingTree>(cfg.tree, &rng);
                warning = Adwin(cfg.warning_delta);
                ++warnings;
            }
            if (signals_change(drift, err)) {
                tree = background ? std::move(background)
                                  : std::make_unique<HoeffdingTree>(cfg.tree, &rng);
                background.reset();
                warning = Adwin(cfg.warning_delta);
                drift = Adwin(cfg.drift_delta);
                correct = 0.0;
                seen = 0.0;
                ++replacements;
            }
        }

        /// Change fires only when the detector cut leaves the error mean
        /// higher than before (accuracy declining, not improving).
        static bool signals_change(Adwin& detector, double err) {
            const double before = detector.size() > 0 ? detector.mean() : 0.0;
            const bool cut = detector.add(err);
            return cut && detector.mean() > before;
        }

        double vote_weight() const { return seen > 0.0 ? correct / seen : 1.0; }

        RandomSource rng;
        Adwin warning;
        Adwin drift;
        std::unique_ptr<HoeffdingTree> tree;
        std::unique_ptr<HoeffdingTree> background;
        double correct = 0.0;
        double seen = 0.0;
        std::size_t replacements = 0;
        std::size_t warnings = 0;
    };

    ArfConfig cfg_;
    std::vector<std::unique_ptr<Member>> members_;
};

} // namespace rill
