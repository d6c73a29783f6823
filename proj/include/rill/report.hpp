// report.hpp: report serialization (JSON + CSV).
//
// Reports are written with stable key order and floats rounded to six
// significant digits, so re-running an experiment produces byte-identical
// files apart from the wall-clock runtime field. Undefined metrics are
// emitted as JSON nulls / empty CSV cells, never as zero.

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rill/config.hpp"
#include "rill/metrics.hpp"
#include "rill/prequential.hpp"

namespace rill {

inline double round_sig6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::strtod(buf, nullptr);
}

inline std::string format_sig6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

namespace detail {

inline ordered_json opt_json(const std::optional<double>& v) {
    if (!v) return nullptr;
    return round_sig6(*v);
}

inline ordered_json metrics_json(const MetricsReport& m) {
    ordered_json j;
    j["accuracy"] = opt_json(m.accuracy);
    j["precision"] = opt_json(m.precision);
    j["recall"] = opt_json(m.recall);
    j["f1"] = opt_json(m.f1);
    return j;
}

} // namespace detail

/// Builds the report document: headline binary-collapsed metrics plus the
/// per-class and macro variants, the confusion matrix, and the config echo.
inline ordered_json report_to_json(const PrequentialReport& report, const BinaryCounts& binary,
                                   const std::vector<std::string>& class_names,
                                   std::size_t normal_class, std::size_t window,
                                   const ordered_json& config_echo) {
    ordered_json j;
    j["run_label"] = report.model_label;
    j["seed"] = report.seed;
    j["total_instances"] = report.total;
    j["elapsed_seconds"] = round_sig6(report.elapsed_seconds);
    j["window"] = window;

    ordered_json metrics;
    ordered_json bin = detail::metrics_json(compute_metrics(binary));
    bin["tp"] = binary.tp;
    bin["fn"] = binary.fn;
    bin["fp"] = binary.fp;
    bin["tn"] = binary.tn;
    bin["normal_class"] =
        normal_class < class_names.size() ? class_names[normal_class] : std::to_string(normal_class);
    metrics["binary"] = bin;

    if (report.total > 0) {
        const PerClassMetrics pc = per_class_metrics(report.confusion);
        metrics["macro"] = detail::metrics_json(pc.macro);
        ordered_json per_class = ordered_json::array();
        for (std::size_t c = 0; c < pc.per_class.size(); ++c) {
            ordered_json row = detail::metrics_json(pc.per_class[c]);
            row["class"] = c < class_names.size() ? class_names[c] : std::to_string(c);
            per_class.push_back(row);
        }
        metrics["per_class"] = per_class;
    } else {
        metrics["macro"] = nullptr;
        metrics["per_class"] = ordered_json::array();
    }
    j["metrics"] = metrics;

    ordered_json confusion = ordered_json::array();
    for (std::size_t a = 0; a < report.confusion.num_classes(); ++a) {
        ordered_json row = ordered_json::array();
        for (std::size_t p = 0; p < report.confusion.num_classes(); ++p) {
            row.push_back(report.confusion.at(a, p));
        }
        confusion.push_back(row);
    }
    j["confusion"] = confusion;
    j["config"] = config_echo;
    return j;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open()) throw IoError("cannot write " + path.string());
    out << content;
    if (!out.good()) throw IoError("write failed for " + path.string());
}

inline void write_report_json(const std::filesystem::path& path, const ordered_json& doc) {
    write_text_file(path, doc.dump(2) + "\n");
}

inline void write_window_csv(const std::filesystem::path& path,
                             const std::vector<WindowPoint>& series) {
    std::string csv = "end_index,accuracy\n";
    for (const auto& point : series) {
        csv += std::to_string(point.end_index) + "," + format_sig6(point.accuracy) + "\n";
    }
    write_text_file(path, csv);
}

struct SuiteRow {
    std::string model;
    MetricsReport binary;
    double runtime_seconds = 0.0;
};

/// Comparison table across models, sorted by recall descending (undefined
/// recall sorts last).
inline void write_suite_csv(const std::filesystem::path& path, std::vector<SuiteRow> rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const SuiteRow& a, const SuiteRow& b) {
        const double ra = a.binary.recall.value_or(-1.0);
        const double rb = b.binary.recall.value_or(-1.0);
        return ra > rb;
    });
    const auto cell = [](const std::optional<double>& v) {
        return v ? format_sig6(*v) : std::string();
    };
    std::string csv = "model,acc,p,r,f1,runtime_s\n";
    for (const auto& row : rows) {
        csv += row.model + "," + cell(row.binary.accuracy) + "," + cell(row.binary.precision) +
               "," + cell(row.binary.recall) + "," + cell(row.binary.f1) + "," +
               format_sig6(row.runtime_seconds) + "\n";
    }
    write_text_file(path, csv);
}

} // namespace rill
