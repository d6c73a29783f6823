// classifier.hpp: the uniform learn-one / predict-one contract.
//
// Every learner and ensemble in the library satisfies the same behavioral
// contract: predict_proba returns C non-negative entries summing to 1
// (uniform before any data), and predict_one is the argmax with ties broken
// toward the lowest class index. Prediction never mutates the model.

#pragma once

#include <memory>
#include <span>
#include <vector>

#include "rill/instance.hpp"

namespace rill {

inline std::size_t argmax_lowest(std::span<const double> v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] > v[best]) best = i;
    }
    return best;
}

inline std::vector<double> uniform_proba(std::size_t num_classes) {
    return std::vector<double>(num_classes, 1.0 / static_cast<double>(num_classes));
}

/// Scales entries to sum 1; an all-zero vector becomes uniform.
inline void normalize_proba(std::vector<double>& p) {
    double total = 0.0;
    for (double v : p) total += v;
    if (total <= 0.0) {
        p.assign(p.size(), 1.0 / static_cast<double>(p.size()));
        return;
    }
    for (double& v : p) v /= total;
}

class Classifier {
public:
    virtual ~Classifier() = default;

    virtual std::size_t num_classes() const = 0;
    virtual void learn_one(const Instance& inst) = 0;
    virtual std::vector<double> predict_proba(std::span<const double> x) const = 0;

    virtual std::size_t predict_one(std::span<const double> x) const {
        const auto proba = predict_proba(x);
        return argmax_lowest(proba);
    }
};

using ClassifierPtr = std::unique_ptr<Classifier>;

} // namespace rill
