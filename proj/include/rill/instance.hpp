// instance.hpp: dataset schema, label encoding and the instance stream contract.

#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "rill/errors.hpp"

namespace rill {

/// One labeled observation. Instances are immutable values once yielded by a
/// stream and are safe to hand to any thread.
struct Instance {
    std::vector<double> features;
    std::size_t label = 0;
    std::uint64_t sequence_number = 0;
};

/// Normalizes a column or label name for order-insensitive header matching:
/// trims whitespace, lowercases, and folds spaces into underscores.
inline std::string normalize_name(const std::string& raw) {
    std::size_t begin = 0;
    std::size_t end = raw.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(raw[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(raw[end - 1]))) --end;
    std::string out;
    out.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
        const char c = raw[i];
        out.push_back(c == ' ' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

/// Bijective mapping between raw label strings and class indices in [0, C).
/// A frozen map rejects unknown labels; an open map assigns indices in
/// first-seen order.
class LabelMap {
public:
    /// Open map: classes indexed in order of first appearance.
    LabelMap() = default;

    /// Frozen map over a declared class list, optionally with raw-label
    /// aliases (alias -> canonical class name).
    static LabelMap fixed(const std::vector<std::string>& classes,
                          const std::map<std::string, std::string>& aliases = {}) {
        LabelMap m;
        m.frozen_ = true;
        for (const auto& name : classes) {
            if (m.raw_to_index_.count(name) > 0) {
                throw SchemaError("duplicate class name: " + name);
            }
            m.raw_to_index_.emplace(name, m.index_to_raw_.size());
            m.index_to_raw_.push_back(name);
        }
        for (const auto& [alias, canonical] : aliases) {
            const auto it = m.raw_to_index_.find(canonical);
            if (it == m.raw_to_index_.end()) {
                throw SchemaError("label alias targets unknown class: " + canonical);
            }
            m.raw_to_index_.emplace(alias, it->second);
        }
        return m;
    }

    std::size_t encode(const std::string& raw) {
        const auto it = raw_to_index_.find(raw);
        if (it != raw_to_index_.end()) return it->second;
        if (frozen_) {
            throw EncodingError("unknown label under fixed label map: '" + raw + "'");
        }
        const std::size_t index = index_to_raw_.size();
        raw_to_index_.emplace(raw, index);
        index_to_raw_.push_back(raw);
        return index;
    }

    const std::string& decode(std::size_t index) const {
        if (index >= index_to_raw_.size()) {
            throw DomainError("label index out of range");
        }
        return index_to_raw_[index];
    }

    std::size_t size() const { return index_to_raw_.size(); }
    bool frozen() const { return frozen_; }
    const std::vector<std::string>& class_names() const { return index_to_raw_; }

private:
    bool frozen_ = false;
    std::unordered_map<std::string, std::size_t> raw_to_index_;
    std::vector<std::string> index_to_raw_;
};

/// Dataset schema: ordered feature names, the label column, and (optionally)
/// a declared canonical class order.
struct Schema {
    std::vector<std::string> feature_names;
    std::string label_column;
    std::vector<std::string> class_names;              // empty -> auto label map
    std::map<std::string, std::string> label_aliases;  // raw label -> canonical class
    std::map<std::string, std::string> header_aliases; // normalized header -> feature name

    std::size_t feature_count() const { return feature_names.size(); }

    void validate() const {
        if (feature_names.empty()) {
            throw SchemaError("schema needs at least one feature");
        }
        std::set<std::string> seen;
        for (const auto& name : feature_names) {
            if (!seen.insert(normalize_name(name)).second) {
                throw SchemaError("duplicate feature name: " + name);
            }
        }
        if (label_column.empty()) {
            throw SchemaError("schema needs a label column");
        }
        if (seen.count(normalize_name(label_column)) > 0) {
            throw SchemaError("label column is also a feature: " + label_column);
        }
        std::set<std::string> classes(class_names.begin(), class_names.end());
        if (classes.size() != class_names.size()) {
            throw SchemaError("class names are not unique");
        }
    }

    /// Schema with the given feature columns removed (drop_columns support).
    Schema without(const std::vector<std::string>& drop) const {
        std::set<std::string> dropped;
        for (const auto& d : drop) dropped.insert(normalize_name(d));
        Schema out = *this;
        out.feature_names.clear();
        for (const auto& name : feature_names) {
            if (dropped.count(normalize_name(name)) == 0) {
                out.feature_names.push_back(name);
            } else {
                dropped.erase(normalize_name(name));
            }
        }
        if (!dropped.empty()) {
            throw SchemaError("drop_columns names unknown feature: " + *dropped.begin());
        }
        return out;
    }

    LabelMap make_label_map() const {
        if (class_names.empty()) return LabelMap();
        return LabelMap::fixed(class_names, label_aliases);
    }
};

/// The 19-column WSN-DS schema: 18 numeric features plus the attack label.
/// Classes follow the canonical reporting order, with the raw "TDMA" label
/// mapped onto the Scheduling class. Header aliases absorb spelling variants
/// seen in circulating copies of the file.
inline Schema wsn_ds_schema() {
    Schema s;
    s.feature_names = {
        "id",     "Time",   "Is_CH",  "Who_CH",          "Dist_To_CH",
        "ADV_S",  "ADV_R",  "JOIN_S", "JOIN_R",          "SCH_S",
        "SCH_R",  "Rank",   "DATA_S", "DATA_R",          "Data_Sent_To_BS",
        "dist_CH_To_BS",    "send_code",                 "Consumed_Energy"};
    s.label_column = "Attack type";
    s.class_names = {"Normal", "Blackhole", "Grayhole", "Flooding", "Scheduling"};
    s.label_aliases = {{"TDMA", "Scheduling"}};
    s.header_aliases = {{"expaned_energy", "Consumed_Energy"},
                        {"expanded_energy", "Consumed_Energy"}};
    return s;
}

/// Pull-based instance source. Single consumer; next() keeps returning
/// nullopt once the stream is exhausted.
class InstanceStream {
public:
    virtual ~InstanceStream() = default;
    virtual std::optional<Instance> next() = 0;
    virtual const Schema& schema() const = 0;
    virtual std::size_t num_classes() const = 0;
};

/// In-memory stream over a fixed instance vector (tests and replays).
class MemoryStream final : public InstanceStream {
public:
    MemoryStream(Schema schema, std::vector<Instance> instances, std::size_t num_classes)
        : schema_(std::move(schema)), instances_(std::move(instances)), num_classes_(num_classes) {}

    std::optional<Instance> next() override {
        if (cursor_ >= instances_.size()) return std::nullopt;
        return instances_[cursor_++];
    }

    const Schema& schema() const override { return schema_; }
    std::size_t num_classes() const override { return num_classes_; }

private:
    Schema schema_;
    std::vector<Instance> instances_;
    std::size_t num_classes_;
    std::size_t cursor_ = 0;
};

} // namespace rill
