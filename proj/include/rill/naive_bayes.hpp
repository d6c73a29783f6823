// naive_bayes.hpp: incremental Gaussian naive Bayes.

#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "rill/classifier.hpp"
#include "rill/running_stats.hpp"

namespace rill {

/// Gaussian naive Bayes over continuous features. Per-class, per-feature
/// moments are maintained single-pass; likelihoods are evaluated in log
/// space with max-subtraction. Class priors use add-one smoothing, so an
/// untrained model predicts the uniform vector.
class GaussianNaiveBayes final : public Classifier {
public:
    GaussianNaiveBayes(std::size_t num_classes, std::size_t num_features,
                       double variance_floor = 1e-6)
        : num_classes_(num_classes),
          num_features_(num_features),
          variance_floor_(variance_floor),
          class_counts_(num_classes, 0.0),
          moments_(num_classes * num_features) {}

    std::size_t num_classes() const override { return num_classes_; }

    void learn_one(const Instance& inst) override {
        class_counts_[inst.label] += 1.0;
        RunningMoments* row = &moments_[inst.label * num_features_];
        for (std::size_t j = 0; j < num_features_; ++j) {
            row[j].add(inst.features[j]);
        }
    }

    std::vector<double> predict_proba(std::span<const double> x) const override {
        std::vector<double> log_post(num_classes_);
        double total = 0.0;
        for (double c : class_counts_) total += c;
        for (std::size_t c = 0; c < num_classes_; ++c) {
            // add-one smoothed prior; classes never observed keep prior-only mass
            double lp = std::log((class_counts_[c] + 1.0) /
                                 (total + static_cast<double>(num_classes_)));
            if (class_counts_[c] > 0.0) {
                const RunningMoments* row = &moments_[c * num_features_];
                for (std::size_t j = 0; j < num_features_; ++j) {
                    lp += log_gaussian(x[j], row[j]);
                }
            }
            log_post[c] = lp;
        }
        double max_lp = log_post[0];
        for (double lp : log_post) max_lp = std::max(max_lp, lp);
        std::vector<double> proba(num_classes_);
        for (std::size_t c = 0; c < num_classes_; ++c) proba[c] = std::exp(log_post[c] - max_lp);
        normalize_proba(proba);
        return proba;
    }

    double class_count(std::size_t c) const { return class_counts_[c]; }
    const RunningMoments& feature_moments(std::size_t c, std::size_t j) const {
        return moments_[c * num_features_ + j];
    }

private:
    double log_gaussian(double x, const RunningMoments& m) const {
        const double var = std::max(m.sample_variance(), variance_floor_);
        const double d = x - m.mean;
        return -0.5 * std::log(2.0 * M_PI * var) - d * d / (2.0 * var);
    }

    std::size_t num_classes_;
    std::size_t num_features_;
    double variance_floor_;
    std::vector<double> class_counts_;
    std::vector<RunningMoments> moments_;
};

} // namespace rill
