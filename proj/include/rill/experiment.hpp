// experiment.hpp: experiment orchestration for the CLI harness.

#pragma once

#include <filesystem>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "rill/config.hpp"
#include "rill/csv_stream.hpp"
#include "rill/prequential.hpp"
#include "rill/registry.hpp"
#include "rill/report.hpp"

namespace rill {

/// The full model roster, run by --suite when the config does not override
/// it: seven singles, four homogeneous and three heterogeneous ensembles.
inline const std::vector<std::string>& default_suite_roster() {
    static const std::vector<std::string> roster = {
        "svm", "knn", "nb",    "pa",    "perceptron", "ht",     "hat",
        "ht10", "hat10", "arf10", "arf20", "arf_hat",  "arf_nb", "hat_nb"};
    return roster;
}

namespace detail {

/// Opens the configured dataset. When the schema declares no classes, one
/// prescan pass fixes the label map in first-seen order so that the class
/// count is known before the model is built.
inline std::unique_ptr<CsvInstanceStream> open_dataset(const ExperimentConfig& cfg,
                                                       const Schema& schema) {
    if (!schema.class_names.empty()) {
        return open_csv_stream(cfg.dataset.path, schema);
    }
    LabelMap discovered;
    {
        auto prescan = open_csv_stream(cfg.dataset.path, schema, LabelMap());
        while (prescan->next()) {
        }
        discovered = prescan->label_map();
    }
    if (discovered.size() < 2) {
        throw SchemaError("dataset declares no classes and fewer than two were observed");
    }
    return open_csv_stream(cfg.dataset.path, schema,
                           LabelMap::fixed(discovered.class_names(), schema.label_aliases));
}

inline std::size_t normal_class_index(const ExperimentConfig& cfg,
                                      const std::vector<std::string>& class_names) {
    const std::string wanted = cfg.dataset.normal_class.value_or(
        !class_names.empty() ? class_names[0] : std::string());
    for (std::size_t i = 0; i < class_names.size(); ++i) {
        if (class_names[i] == wanted) return i;
    }
    throw ConfigError("normal_class '" + wanted + "' is not a dataset class");
}

} // namespace detail

struct RunResult {
    PrequentialReport report;
    BinaryCounts binary;
    std::filesystem::path report_path;
    std::filesystem::path window_path;
};

/// Runs one model prequentially over the configured dataset and writes
/// <output_dir>/<run_label>.report.json and <run_label>.window.csv.
/// Partially written outputs are removed if the run fails.
inline RunResult run_single(const ExperimentConfig& cfg, const std::string& model_name,
                            const std::string& run_label) {
    detail::validate_run_label(run_label);
    const Schema schema = cfg.resolved_schema();
    auto stream = detail::open_dataset(cfg, schema);
    const std::size_t num_classes = stream->num_classes();
    const std::vector<std::string>& class_names = stream->label_map().class_names();

    auto model = build_model(model_name, num_classes, schema.feature_count(), cfg.seed,
                             cfg.model.name == model_name ? cfg.model.params
                                                          : ordered_json::object());

    try {
        std::filesystem::create_directories(cfg.output_dir);
    } catch (const std::filesystem::filesystem_error& e) {
        throw IoError("cannot create output directory '" + cfg.output_dir + "': " + e.what());
    }
    RunResult result;
    result.report_path = std::filesystem::path(cfg.output_dir) / (run_label + ".report.json");
    result.window_path = std::filesystem::path(cfg.output_dir) / (run_label + ".window.csv");
    try {
        result.report = prequential_run(*stream, *model, cfg.window, run_label, cfg.seed);
        const std::size_t normal = detail::normal_class_index(cfg, class_names);
        result.binary = binary_collapse(result.report.confusion, normal);

        ExperimentConfig echo = cfg;
        echo.model.name = model_name;
        if (cfg.model.name != model_name) echo.model.params = ordered_json::object();
        echo.run_label = run_label;
        const ordered_json doc = report_to_json(result.report, result.binary, class_names,
                                                normal, cfg.window, config_to_json(echo));
        write_report_json(result.report_path, doc);
        write_window_csv(result.window_path, result.report.windows);
    } catch (...) {
        std::error_code ec;
        std::filesystem::remove(result.report_path, ec);
        std::filesystem::remove(result.window_path, ec);
        throw;
    }
    return result;
}

inline RunResult run_experiment(const ExperimentConfig& cfg) {
    return run_single(cfg, cfg.model.name, cfg.run_label);
}

/// Runs the model roster sequentially (fair runtime comparison) and writes
/// per-model reports plus the combined suite.csv table.
inline std::vector<RunResult> run_suite(const ExperimentConfig& cfg,
                                        std::ostream* progress = nullptr) {
    const std::vector<std::string>& roster =
        cfg.suite.empty() ? default_suite_roster() : cfg.suite;
    std::vector<RunResult> results;
    std::vector<SuiteRow> rows;
    for (const std::string& model_name : roster) {
        if (progress) {
            *progress << "[" << (results.size() + 1) << "/" << roster.size() << "] "
                      << model_name << " ..." << std::flush;
        }
        RunResult result = run_single(cfg, model_name, cfg.run_label + "_" + model_name);
        if (progress) {
            *progress << " " << format_sig6(result.report.elapsed_seconds) << "s\n";
        }
        rows.push_back({model_name, compute_metrics(result.binary),
                        result.report.elapsed_seconds});
        results.push_back(std::move(result));
    }
    write_suite_csv(std::filesystem::path(cfg.output_dir) / "suite.csv", rows);
    return results;
}

} // namespace rill
