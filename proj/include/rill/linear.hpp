// linear.hpp: one-vs-rest linear online learners (Perceptron, PA-I, SVM-SGD).

#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "rill/classifier.hpp"

namespace rill {

/// Shared state for the linear family: a C x d weight matrix plus bias vector.
/// Probabilities come from a softmax over the class scores, so a zero model
/// predicts the uniform vector.
class LinearModel : public Classifier {
public:
    LinearModel(std::size_t num_classes, std::size_t num_features)
        : num_classes_(num_classes),
          num_features_(num_features),
          weights_(num_classes * num_features, 0.0),
          bias_(num_classes, 0.0) {}

    std::size_t num_classes() const override { return num_classes_; }

    std::vector<double> predict_proba(std::span<const double> x) const override {
        std::vector<double> s = scores(x);
        double max_s = s[0];
        for (double v : s) max_s = std::max(max_s, v);
        double total = 0.0;
        for (double& v : s) {
            v = std::exp(v - max_s);
            total += v;
        }
        for (double& v : s) v /= total;
        return s;
    }

    std::vector<double> scores(std::span<const double> x) const {
        std::vector<double> s(num_classes_, 0.0);
        for (std::size_t c = 0; c < num_classes_; ++c) {
            const double* w = &weights_[c * num_features_];
            double acc = bias_[c];
            for (std::size_t j = 0; j < num_features_; ++j) acc += w[j] * x[j];
            s[c] = acc;
        }
        return s;
    }

    double weight(std::size_t c, std::size_t j) const { return weights_[c * num_features_ + j]; }
    double bias(std::size_t c) const { return bias_[c]; }

protected:
    void add_to_row(std::size_t c, std::span<const double> x, double scale) {
        double* w = &weights_[c * num_features_];
        for (std::size_t j = 0; j < num_features_; ++j) w[j] += scale * x[j];
        bias_[c] += scale;
    }

    void shrink_row(std::size_t c, double factor) {
        double* w = &weights_[c * num_features_];
        for (std::size_t j = 0; j < num_features_; ++j) w[j] *= factor;
    }

    std::size_t num_classes_;
    std::size_t num_features_;
    std::vector<double> weights_;
    std::vector<double> bias_;
};

/// Multiclass perceptron, mistake-driven: a correct argmax leaves the state
/// bit-identical.
class Perceptron final : public LinearModel {
public:
    Perceptron(std::size_t num_classes, std::size_t num_features, double learning_rate = 0.1)
        : LinearModel(num_classes, num_features), eta_(learning_rate) {}

    void learn_one(const Instance& inst) override {
        const std::size_t predicted = argmax_lowest(scores(inst.features));
        if (predicted == inst.label) return;
        add_to_row(inst.label, inst.features, eta_);
        add_to_row(predicted, inst.features, -eta_);
    }

private:
    double eta_;
};

/// Multiclass Passive-Aggressive (PA-I). Passive when the true class already
/// beats the best wrong class by margin 1; otherwise steps by
/// tau = min(C, loss / (2 * ||x||^2)).
class PassiveAggressive final : public LinearModel {
public:
    PassiveAggressive(std::size_t num_classes, std::size_t num_features,
                      double aggressiveness = 1.0)
        : LinearModel(num_classes, num_features), c_pa_(aggressiveness) {}

    void learn_one(const Instance& inst) override {
        const std::vector<double> s = scores(inst.features);
        std::size_t rival = inst.label == 0 ? 1 : 0;
        for (std::size_t c = 0; c < num_classes_; ++c) {
            if (c != inst.label && s[c] > s[rival]) rival = c;
        }
        const double margin = s[inst.label] - s[rival];
        const double loss = std::max(0.0, 1.0 - margin);
        if (loss == 0.0) return;
        double sq_norm = 0.0;
        for (double v : inst.features) sq_norm += v * v;
        const double tau = std::min(c_pa_, loss / (2.0 * sq_norm + 1e-12));
        add_to_row(inst.label, inst.features, tau);
        add_to_row(rival, inst.features, -tau);
    }

private:
    double c_pa_;
};

/// One-vs-rest linear SVM trained by hinge-loss stochastic subgradient steps
/// with L2 regularization (bias unregularized).
class LinearSvm final : public LinearModel {
public:
    LinearSvm(std::size_t num_classes, std::size_t num_features, double learning_rate = 0.1,
              double regularization = 1e-4)
        : LinearModel(num_classes, num_features), eta_(learning_rate), lambda_(regularization) {}

    void learn_one(const Instance& inst) override {
        const std::vector<double> s = scores(inst.features);
        for (std::size_t c = 0; c < num_classes_; ++c) {
            const double target = c == inst.label ? 1.0 : -1.0;
            shrink_row(c, 1.0 - eta_ * lambda_);
            if (target * s[c] < 1.0) {
                add_to_row(c, inst.features, eta_ * target);
            }
        }
    }

private:
    double eta_;
    double lambda_;
};

} // namespace rill
