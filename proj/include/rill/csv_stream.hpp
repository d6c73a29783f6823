// csv_stream.hpp: streaming CSV ingestion.
//
// Dialect: comma separator, first row is the header, numerics unquoted, UTF-8.
// Header matching is order-insensitive by (normalized) column name.

#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rill/instance.hpp"

namespace rill {

namespace detail {

inline std::string_view trim_view(std::string_view v) {
    while (!v.empty() && (v.front() == ' ' || v.front() == '\t' || v.front() == '\r')) {
        v.remove_prefix(1);
    }
    while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\r')) {
        v.remove_suffix(1);
    }
    return v;
}

inline void split_csv_line(const std::string& line, std::vector<std::string_view>& out) {
    out.clear();
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.push_back(trim_view(std::string_view(line).substr(start, i - start)));
            start = i + 1;
        }
    }
}

} // namespace detail

/// Streams Instances out of a CSV file in file order, assigning consecutive
/// sequence numbers starting at 0.
class CsvInstanceStream final : public InstanceStream {
public:
    CsvInstanceStream(std::string path, Schema schema, LabelMap label_map)
        : path_(std::move(path)),
          schema_(std::move(schema)),
          label_map_(std::move(label_map)),
          file_(path_) {
        schema_.validate();
        if (!file_.is_open()) {
            throw IoError("cannot open dataset file: " + path_);
        }
        read_header();
    }

    std::optional<Instance> next() override {
        if (done_) return std::nullopt;
        std::string line;
        while (std::getline(file_, line)) {
            ++line_number_;
            if (detail::trim_view(line).empty()) continue; // tolerate blank lines
            return parse_row(line);
        }
        if (file_.bad()) {
            throw IoError("read failure in " + path_ + " near line " + std::to_string(line_number_));
        }
        done_ = true;
        return std::nullopt;
    }

    const Schema& schema() const override { return schema_; }

    /// Fixed class count for a frozen map; discovered-so-far count in auto
    /// mode (grows while the stream is consumed).
    std::size_t num_classes() const override { return label_map_.size(); }

    const LabelMap& label_map() const { return label_map_; }

private:
    void read_header() {
        std::string line;
        if (!std::getline(file_, line)) {
            throw SchemaError("missing header row in " + path_);
        }
        ++line_number_;
        std::vector<std::string_view> cells;
        detail::split_csv_line(line, cells);

        // normalized header name -> column position
        std::map<std::string, std::size_t> positions;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            std::string key = normalize_name(std::string(cells[i]));
            const auto alias = schema_.header_aliases.find(key);
            if (alias != schema_.header_aliases.end()) key = normalize_name(alias->second);
            positions.emplace(std::move(key), i);
        }

        feature_columns_.clear();
        for (const auto& name : schema_.feature_names) {
            const auto it = positions.find(normalize_name(name));
            if (it == positions.end()) {
                throw SchemaError("header of " + path_ + " is missing column '" + name + "'");
            }
            feature_columns_.push_back(it->second);
        }
        const auto lbl = positions.find(normalize_name(schema_.label_column));
        if (lbl == positions.end()) {
            throw SchemaError("header of " + path_ + " is missing label column '" +
                              schema_.label_column + "'");
        }
        label_column_ = lbl->second;
    }

    Instance parse_row(const std::string& line) {
        detail::split_csv_line(line, cells_);
        Instance inst;
        inst.sequence_number = sequence_;
        inst.features.resize(schema_.feature_count());
        for (std::size_t j = 0; j < feature_columns_.size(); ++j) {
            const std::size_t col = feature_columns_[j];
            if (col >= cells_.size()) {
                throw ParseError("line " + std::to_string(line_number_) + " of " + path_ +
                                 ": too few columns");
            }
            inst.features[j] = parse_cell(cells_[col], schema_.feature_names[j]);
        }
        if (label_column_ >= cells_.size()) {
            throw ParseError("line " + std::to_string(line_number_) + " of " + path_ +
                             ": too few columns");
        }
        std::string raw_label(cells_[label_column_]);
        const auto alias = schema_.label_aliases.find(raw_label);
        if (alias != schema_.label_aliases.end()) raw_label = alias->second;
        inst.label = label_map_.encode(raw_label);
        ++sequence_;
        return inst;
    }

    double parse_cell(std::string_view cell, const std::string& column) {
        double value = 0.0;
        const auto first = cell.data();
        const auto last = cell.data() + cell.size();
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last || cell.empty() || !std::isfinite(value)) {
            throw ParseError("line " + std::to_string(line_number_) + " of " + path_ +
                             ": cell '" + std::string(cell) + "' in column '" + column +
                             "' is not numeric");
        }
        return value;
    }

    std::string path_;
    Schema schema_;
    LabelMap label_map_;
    std::ifstream file_;
    std::vector<std::size_t> feature_columns_;
    std::size_t label_column_ = 0;
    std::vector<std::string_view> cells_;
    std::uint64_t sequence_ = 0;
    std::size_t line_number_ = 0;
    bool done_ = false;
};

/// Opens a CSV stream. Passing a default-constructed (open) LabelMap builds
/// the class index in first-seen order; a frozen map rejects unknown labels.
inline std::unique_ptr<CsvInstanceStream> open_csv_stream(const std::string& path,
                                                          const Schema& schema,
                                                          LabelMap label_map) {
    return std::make_unique<CsvInstanceStream>(path, schema, std::move(label_map));
}

/// Convenience overload: frozen map from the schema's class list when one is
/// declared, open map otherwise.
inline std::unique_ptr<CsvInstanceStream> open_csv_stream(const std::string& path,
                                                          const Schema& schema) {
    return open_csv_stream(path, schema, schema.make_label_map());
}

} // namespace rill
