// prequential.hpp: interleaved test-then-train evaluation.

#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rill/classifier.hpp"
#include "rill/instance.hpp"
#include "rill/metrics.hpp"

namespace rill {

struct PrequentialReport {
    std::string model_label;
    std::uint64_t seed = 0;
    std::size_t total = 0;
    double elapsed_seconds = 0.0; // predict + learn only, ingestion excluded
    ConfusionMatrix confusion{1};
    std::vector<WindowPoint> windows;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> log; // (actual, predicted)
};

/// Runs the prequential protocol: every instance is predicted first, the
/// outcome is recorded, and only then is the instance used for training.
/// The model never sees a label before its prediction for that instance is
/// committed. Any model failure aborts the run with the instance index.
inline PrequentialReport prequential_run(InstanceStream& stream, Classifier& model,
                                         std::size_t window,
                                         const std::string& model_label = "",
                                         std::uint64_t seed = 0) {
    using clock = std::chrono::steady_clock;
    PrequentialReport report;
    report.model_label = model_label;
    report.seed = seed;
    report.confusion = ConfusionMatrix(model.num_classes());

    std::chrono::nanoseconds elapsed{0};
    while (auto inst = stream.next()) {
        std::size_t predicted = 0;
        try {
            const auto t0 = clock::now();
            predicted = model.predict_one(inst->features);
            const auto t1 = clock::now();
            elapsed += t1 - t0;
        } catch (const std::exception& e) {
            throw Error("model failed predicting instance " +
                        std::to_string(inst->sequence_number) + ": " + e.what());
        }
        report.confusion.update(inst->label, predicted);
        report.log.emplace_back(static_cast<std::uint32_t>(inst->label),
                                static_cast<std::uint32_t>(predicted));
        try {
            const auto t0 = clock::now();
            model.learn_one(*inst);
            const auto t1 = clock::now();
            elapsed += t1 - t0;
        } catch (const std::exception& e) {
            throw Error("model failed learning instance " +
                        std::to_string(inst->sequence_number) + ": " + e.what());
        }
        ++report.total;
    }
    report.elapsed_seconds = std::chrono::duration<double>(elapsed).count();
    report.windows = windowed_accuracy(report.log, window);
    return report;
}

} // namespace rill
