// config.hpp: experiment configuration file handling.
//
// One flat JSON file per experiment. Parsing is strict: unknown keys are
// rejected so typos fail fast, and the fully resolved config (defaults
// filled) is echoed into every report. parse(emit(config)) == config.

#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rill/instance.hpp"
#include "rill/registry.hpp"

namespace rill {

using ordered_json = nlohmann::ordered_json;

struct DatasetConfig {
    std::string path;
    std::string schema_name = "wsn-ds"; // empty when an inline schema is used
    std::optional<Schema> inline_schema;
    std::vector<std::string> drop_columns;
    std::optional<std::string> label_column; // overrides the schema's label
    std::optional<std::string> normal_class; // binary-collapse negative class

    bool operator==(const DatasetConfig& o) const {
        const auto schema_eq = [&] {
            if (inline_schema.has_value() != o.inline_schema.has_value()) return false;
            if (!inline_schema) return true;
            return inline_schema->feature_names == o.inline_schema->feature_names &&
                   inline_schema->label_column == o.inline_schema->label_column &&
                   inline_schema->class_names == o.inline_schema->class_names;
        };
        return path == o.path && schema_name == o.schema_name && schema_eq() &&
               drop_columns == o.drop_columns && label_column == o.label_column &&
               normal_class == o.normal_class;
    }
};

struct ModelConfig {
    std::string name;
    ordered_json params = ordered_json::object();

    bool operator==(const ModelConfig& o) const { return name == o.name && params == o.params; }
};

struct ExperimentConfig {
    DatasetConfig dataset;
    ModelConfig model;
    std::uint64_t seed = 42;
    std::size_t window = 1000;
    std::string output_dir = "out";
    std::string run_label; // defaults to the model name
    std::vector<std::string> suite; // roster override for --suite runs

    bool operator==(const ExperimentConfig& o) const {
        return dataset == o.dataset && model == o.model && seed == o.seed && window == o.window &&
               output_dir == o.output_dir && run_label == o.run_label && suite == o.suite;
    }

    /// The effective schema: named or inline, label override and column
    /// drops applied.
    Schema resolved_schema() const {
        Schema schema;
        if (inline_schema_used()) {
            schema = *dataset.inline_schema;
        } else if (dataset.schema_name == "wsn-ds") {
            schema = wsn_ds_schema();
        } else {
            throw ConfigError("unknown schema name '" + dataset.schema_name + "'");
        }
        if (dataset.label_column) schema.label_column = *dataset.label_column;
        if (!dataset.drop_columns.empty()) schema = schema.without(dataset.drop_columns);
        schema.validate();
        return schema;
    }

    bool inline_schema_used() const { return dataset.inline_schema.has_value(); }
};

namespace detail {

inline void reject_unknown_keys(const ordered_json& obj,
                                std::initializer_list<const char*> allowed,
                                const std::string& context) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* a) { return key == a; }) == allowed.end()) {
            throw ConfigError("unknown key '" + key + "' in " + context);
        }
    }
}

inline Schema schema_from_json(const ordered_json& j) {
    reject_unknown_keys(j, {"features", "label", "classes"}, "dataset.schema");
    Schema s;
    if (!j.contains("features") || !j.contains("label")) {
        throw ConfigError("inline schema needs 'features' and 'label'");
    }
    s.feature_names = j.at("features").get<std::vector<std::string>>();
    s.label_column = j.at("label").get<std::string>();
    if (j.contains("classes")) {
        s.class_names = j.at("classes").get<std::vector<std::string>>();
    }
    s.validate();
    return s;
}

inline ordered_json schema_to_json(const Schema& s) {
    ordered_json j;
    j["features"] = s.feature_names;
    j["label"] = s.label_column;
    if (!s.class_names.empty()) j["classes"] = s.class_names;
    return j;
}

inline void validate_run_label(const std::string& label) {
    if (label.empty()) throw ConfigError("run_label must not be empty");
    if (label.find('/') != std::string::npos || label.find('\\') != std::string::npos ||
        label.find("..") != std::string::npos) {
        throw ConfigError("run_label must not contain path separators: '" + label + "'");
    }
}

} // namespace detail

inline ExperimentConfig config_from_json(const ordered_json& j) {
    using detail::reject_unknown_keys;
    reject_unknown_keys(j, {"dataset", "model", "seed", "window", "output_dir", "run_label",
                            "suite"},
                        "config");
    ExperimentConfig cfg;

    if (!j.contains("dataset") || !j.at("dataset").is_object()) {
        throw ConfigError("config needs a 'dataset' object");
    }
    const auto& d = j.at("dataset");
    reject_unknown_keys(d, {"path", "schema", "drop_columns", "label_column", "normal_class"},
                        "dataset");
    if (!d.contains("path")) throw ConfigError("dataset.path is required");
    cfg.dataset.path = d.at("path").get<std::string>();
    if (d.contains("schema")) {
        if (d.at("schema").is_string()) {
            cfg.dataset.schema_name = d.at("schema").get<std::string>();
        } else {
            cfg.dataset.schema_name.clear();
            cfg.dataset.inline_schema = detail::schema_from_json(d.at("schema"));
        }
    }
    if (d.contains("drop_columns")) {
        cfg.dataset.drop_columns = d.at("drop_columns").get<std::vector<std::string>>();
    }
    if (d.contains("label_column")) {
        cfg.dataset.label_column = d.at("label_column").get<std::string>();
    }
    if (d.contains("normal_class")) {
        cfg.dataset.normal_class = d.at("normal_class").get<std::string>();
    }

    if (!j.contains("model") || !j.at("model").is_object()) {
        throw ConfigError("config needs a 'model' object");
    }
    const auto& m = j.at("model");
    reject_unknown_keys(m, {"name", "params"}, "model");
    if (!m.contains("name")) throw ConfigError("model.name is required");
    cfg.model.name = m.at("name").get<std::string>();
    const auto& names = model_registry_names();
    if (std::find(names.begin(), names.end(), cfg.model.name) == names.end()) {
        std::string all;
        for (const auto& n : names) all += all.empty() ? n : ", " + n;
        throw ConfigError("unknown model '" + cfg.model.name + "' (did you mean '" +
                          nearest_model_name(cfg.model.name) + "'?); valid names: " + all);
    }
    if (m.contains("params")) cfg.model.params = m.at("params");

    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("window")) cfg.window = j.at("window").get<std::size_t>();
    if (cfg.window == 0) throw ConfigError("window must be positive");
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    cfg.run_label = j.contains("run_label") ? j.at("run_label").get<std::string>()
                                            : cfg.model.name;
    detail::validate_run_label(cfg.run_label);
    if (j.contains("suite")) {
        cfg.suite = j.at("suite").get<std::vector<std::string>>();
        for (const auto& name : cfg.suite) {
            if (std::find(names.begin(), names.end(), name) == names.end()) {
                throw ConfigError("unknown model '" + name + "' in suite list");
            }
        }
    }
    return cfg;
}

/// Emits the fully resolved config; config_from_json(config_to_json(c)) == c.
inline ordered_json config_to_json(const ExperimentConfig& cfg) {
    ordered_json j;
    ordered_json d;
    d["path"] = cfg.dataset.path;
    if (cfg.dataset.inline_schema) {
        d["schema"] = detail::schema_to_json(*cfg.dataset.inline_schema);
    } else {
        d["schema"] = cfg.dataset.schema_name;
    }
    d["drop_columns"] = cfg.dataset.drop_columns;
    if (cfg.dataset.label_column) d["label_column"] = *cfg.dataset.label_column;
    if (cfg.dataset.normal_class) d["normal_class"] = *cfg.dataset.normal_class;
    j["dataset"] = d;
    ordered_json m;
    m["name"] = cfg.model.name;
    m["params"] = cfg.model.params;
    j["model"] = m;
    j["seed"] = cfg.seed;
    j["window"] = cfg.window;
    j["output_dir"] = cfg.output_dir;
    j["run_label"] = cfg.run_label;
    if (!cfg.suite.empty()) j["suite"] = cfg.suite;
    return j;
}

inline ExperimentConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) throw IoError("cannot open config file: " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
    }
    return config_from_json(j);
}

} // namespace rill
