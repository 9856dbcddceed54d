#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "araf/csv.hpp"
#include "araf/error.hpp"

namespace araf {

enum class ColumnKind { Categorical, Continuous, Label };

struct ColumnInfo {
  std::string name;
  ColumnKind kind = ColumnKind::Categorical;
  std::vector<std::string> categories;  // empty for continuous columns
};

/// Columns in file order, exactly one of which is the label.
struct Schema {
  std::vector<ColumnInfo> columns;
  std::size_t label_column = 0;

  std::size_t feature_count() const { return columns.empty() ? 0 : columns.size() - 1; }
};

struct FeatureColumn {
  std::string name;
  ColumnKind kind = ColumnKind::Categorical;
  std::vector<std::string> categories;
  std::vector<std::uint32_t> codes;  // categorical: one id per row
  std::vector<double> values;        // continuous: one value per row

  bool categorical() const { return kind == ColumnKind::Categorical; }
};

inline std::optional<double> parse_real(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last || !std::isfinite(value)) return std::nullopt;
  return value;
}

/// Shortest representation that parses back to the same double.
inline std::string format_real(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

/// Immutable column-typed table. Feature indices count non-label columns
/// in file order; the label may sit anywhere in the original header.
class Dataset {
 public:
  Dataset(std::vector<FeatureColumn> features, std::string label_name,
          std::vector<std::string> classes, std::vector<std::uint32_t> labels,
          std::optional<std::size_t> label_position = std::nullopt)
      : features_(std::move(features)),
        label_name_(std::move(label_name)),
        classes_(std::move(classes)),
        labels_(std::move(labels)),
        label_position_(label_position.value_or(features_.size())) {
    validate();
  }

  std::size_t rows() const { return labels_.size(); }
  std::size_t num_features() const { return features_.size(); }
  std::size_t num_classes() const { return classes_.size(); }

  const FeatureColumn& feature(std::size_t f) const { return features_.at(f); }
  const std::vector<FeatureColumn>& features() const { return features_; }
  const std::string& label_name() const { return label_name_; }
  const std::vector<std::string>& classes() const { return classes_; }
  std::span<const std::uint32_t> labels() const { return labels_; }
  std::size_t label_position() const { return label_position_; }

  std::uint32_t code(std::size_t row, std::size_t f) const { return features_[f].codes[row]; }
  std::size_t category_count(std::size_t f) const { return features_[f].categories.size(); }

  bool all_categorical() const {
    return std::all_of(features_.begin(), features_.end(),
                       [](const FeatureColumn& c) { return c.categorical(); });
  }

  std::optional<std::size_t> find_feature(std::string_view name) const {
    for (std::size_t f = 0; f < features_.size(); ++f) {
      if (features_[f].name == name) return f;
    }
    return std::nullopt;
  }

  std::optional<std::uint32_t> find_category(std::size_t f, std::string_view name) const {
    const auto& cats = features_.at(f).categories;
    auto it = std::find(cats.begin(), cats.end(), name);
    if (it == cats.end()) return std::nullopt;
    return static_cast<std::uint32_t>(it - cats.begin());
  }

  std::vector<std::uint64_t> class_totals() const {
    std::vector<std::uint64_t> totals(classes_.size(), 0);
    for (auto y : labels_) ++totals[y];
    return totals;
  }

  Schema schema() const {
    Schema s;
    std::size_t f = 0;
    for (std::size_t col = 0; col <= features_.size(); ++col) {
      if (col == label_position_) {
        s.label_column = col;
        s.columns.push_back({label_name_, ColumnKind::Label, classes_});
      } else {
        const auto& fc = features_[f++];
        s.columns.push_back({fc.name, fc.kind, fc.categories});
      }
    }
    return s;
  }

  /// Rows in the given order (repeats allowed). Category lists are kept so
  /// ids stay comparable with the source dataset.
  Dataset select_rows(std::span<const std::size_t> indices) const {
    std::vector<FeatureColumn> cols;
    cols.reserve(features_.size());
    for (const auto& src : features_) {
      FeatureColumn c{src.name, src.kind, src.categories, {}, {}};
      if (src.categorical()) {
        c.codes.reserve(indices.size());
        for (auto i : indices) c.codes.push_back(src.codes.at(i));
      } else {
        c.values.reserve(indices.size());
        for (auto i : indices) c.values.push_back(src.values.at(i));
      }
      cols.push_back(std::move(c));
    }
    std::vector<std::uint32_t> ys;
    ys.reserve(indices.size());
    for (auto i : indices) ys.push_back(labels_.at(i));
    return Dataset(std::move(cols), label_name_, classes_, std::move(ys), label_position_);
  }

  /// Copy with one feature column replaced (used by discretization).
  Dataset with_feature(std::size_t f, FeatureColumn column) const {
    auto cols = features_;
    cols.at(f) = std::move(column);
    return Dataset(std::move(cols), label_name_, classes_, labels_, label_position_);
  }

  /// Copy where `name` is guaranteed to be a category of feature f; returns
  /// the copy and the category id. Unseen categories match no row.
  std::pair<Dataset, std::uint32_t> with_category(std::size_t f, const std::string& name) const {
    if (auto id = find_category(f, name)) return {*this, *id};
    auto column = features_.at(f);
    column.categories.push_back(name);
    auto id = static_cast<std::uint32_t>(column.categories.size() - 1);
    return {with_feature(f, std::move(column)), id};
  }

  /// String form of a cell, addressed in schema (file) column order.
  std::string cell(std::size_t row, std::size_t column) const {
    if (column == label_position_) return classes_[labels_[row]];
    const auto& fc = features_[column < label_position_ ? column : column - 1];
    if (fc.categorical()) return fc.categories[fc.codes[row]];
    return format_real(fc.values[row]);
  }

 private:
  void validate() const {
    const std::size_t n = labels_.size();
    if (n == 0) throw Error(ErrorCode::EmptyDataset, "dataset has no rows");
    if (label_position_ > features_.size()) {
      throw Error(ErrorCode::InvalidDataset, "label position out of range");
    }
    for (auto y : labels_) {
      if (y >= classes_.size()) throw Error(ErrorCode::InvalidDataset, "label id out of range");
    }
    for (const auto& c : features_) {
      if (c.kind == ColumnKind::Label) {
        throw Error(ErrorCode::InvalidDataset, "feature column '" + c.name + "' marked as label");
      }
      if (c.categorical()) {
        if (c.codes.size() != n) throw Error(ErrorCode::InvalidDataset, "column '" + c.name + "' length mismatch");
        for (auto v : c.codes) {
          if (v >= c.categories.size()) {
            throw Error(ErrorCode::InvalidDataset, "category id out of range in '" + c.name + "'");
          }
        }
      } else if (c.values.size() != n) {
        throw Error(ErrorCode::InvalidDataset, "column '" + c.name + "' length mismatch");
      }
    }
  }

  std::vector<FeatureColumn> features_;
  std::string label_name_;
  std::vector<std::string> classes_;
  std::vector<std::uint32_t> labels_;
  std::size_t label_position_;
};

namespace detail {

struct CategoryEncoder {
  std::vector<std::string> categories;
  std::unordered_map<std::string, std::uint32_t> ids;

  std::uint32_t encode(const std::string& value) {
    auto [it, inserted] = ids.try_emplace(value, static_cast<std::uint32_t>(categories.size()));
    if (inserted) categories.push_back(value);
    return it->second;
  }
};

}  // namespace detail

using KindOverrides = std::map<std::string, ColumnKind, std::less<>>;

/// Builds a Dataset from parsed CSV records (first record is the header).
inline Dataset dataset_from_records(const std::vector<csv::Row>& records, std::string_view label_column,
                                    const KindOverrides& overrides = {}) {
  if (records.empty()) throw Error(ErrorCode::ParseError, "missing header row");
  const auto& header = records.front();
  const std::size_t width = header.size();

  auto label_it = std::find(header.begin(), header.end(), label_column);
  if (label_it == header.end()) {
    throw Error(ErrorCode::UnknownLabelColumn, "label column '" + std::string(label_column) + "' not in header");
  }
  const auto label_pos = static_cast<std::size_t>(label_it - header.begin());
  for (const auto& [name, kind] : overrides) {
    if (std::find(header.begin(), header.end(), name) == header.end()) {
      throw Error(ErrorCode::InvalidArgument, "override for unknown column '" + name + "'");
    }
    if (kind == ColumnKind::Label && name != label_column) {
      throw Error(ErrorCode::InvalidArgument, "only the label column may be declared Label");
    }
  }

  const std::size_t n = records.size() - 1;
  if (n == 0) throw Error(ErrorCode::EmptyDataset, "no data rows");
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != width) {
      throw Error(ErrorCode::RaggedRow, "row " + std::to_string(r) + " has " + std::to_string(records[r].size()) +
                                            " cells, header has " + std::to_string(width));
    }
    for (std::size_t c = 0; c < width; ++c) {
      if (records[r][c].empty()) {
        throw Error(ErrorCode::MissingValue, "empty cell at row " + std::to_string(r) + ", column '" + header[c] + "'");
      }
    }
  }

  std::vector<FeatureColumn> features;
  for (std::size_t c = 0; c < width; ++c) {
    if (c == label_pos) continue;
    FeatureColumn column;
    column.name = header[c];

    std::optional<ColumnKind> declared;
    if (auto it = overrides.find(header[c]); it != overrides.end()) declared = it->second;

    bool numeric = true;
    std::vector<double> parsed;
    parsed.reserve(n);
    for (std::size_t r = 1; r <= n && numeric; ++r) {
      if (auto v = parse_real(records[r][c])) {
        parsed.push_back(*v);
      } else {
        numeric = false;
        if (declared == ColumnKind::Continuous) {
          throw Error(ErrorCode::MixedColumn, "non-numeric cell '" + records[r][c] + "' in continuous column '" +
                                                  header[c] + "'");
        }
      }
    }

    const ColumnKind kind = declared.value_or(numeric ? ColumnKind::Continuous : ColumnKind::Categorical);
    column.kind = kind;
    if (kind == ColumnKind::Continuous) {
      column.values = std::move(parsed);
    } else {
      detail::CategoryEncoder encoder;
      column.codes.reserve(n);
      for (std::size_t r = 1; r <= n; ++r) column.codes.push_back(encoder.encode(records[r][c]));
      column.categories = std::move(encoder.categories);
    }
    features.push_back(std::move(column));
  }

  detail::CategoryEncoder classes;
  std::vector<std::uint32_t> labels;
  labels.reserve(n);
  for (std::size_t r = 1; r <= n; ++r) labels.push_back(classes.encode(records[r][label_pos]));

  return Dataset(std::move(features), header[label_pos], std::move(classes.categories), std::move(labels),
                 label_pos);
}

inline Dataset load_csv(const std::string& path, std::string_view label_column,
                        const KindOverrides& overrides = {}) {
  return dataset_from_records(csv::read(path), label_column, overrides);
}

inline void write_csv(std::ostream& out, const Dataset& ds) {
  const auto schema = ds.schema();
  csv::Row row;
  for (const auto& c : schema.columns) row.push_back(c.name);
  csv::write_row(out, row);
  for (std::size_t r = 0; r < ds.rows(); ++r) {
    row.clear();
    for (std::size_t c = 0; c < schema.columns.size(); ++c) row.push_back(ds.cell(r, c));
    csv::write_row(out, row);
  }
}

/// Dense row-major 0/1 matrix.
struct BinaryMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> data;
  std::vector<std::string> names;

  std::uint8_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

inline BinaryMatrix one_hot(const Dataset& ds) {
  if (!ds.all_categorical()) throw Error(ErrorCode::ContinuousPresent, "one_hot requires categorical features");
  BinaryMatrix m;
  m.rows = ds.rows();
  std::vector<std::size_t> offsets;
  for (const auto& fc : ds.features()) {
    offsets.push_back(m.names.size());
    for (const auto& cat : fc.categories) m.names.push_back(fc.name + "=" + cat);
  }
  m.cols = m.names.size();
  m.data.assign(m.rows * m.cols, 0);
  for (std::size_t f = 0; f < ds.num_features(); ++f) {
    const auto& codes = ds.feature(f).codes;
    for (std::size_t r = 0; r < m.rows; ++r) m.data[r * m.cols + offsets[f] + codes[r]] = 1;
  }
  return m;
}

}  // namespace araf
