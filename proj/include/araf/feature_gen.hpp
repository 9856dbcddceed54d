#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "araf/data_model.hpp"
#include "araf/discretizer.hpp"
#include "araf/error.hpp"
#include "araf/miner.hpp"
#include "araf/rules.hpp"

namespace araf {

enum class TransformMode {
  AppendToLabelEncoded,        // label-encoded base columns + every generated feature
  AppendInteractionsToOneHot,  // one-hot base columns + 2-item features only
};

struct FeatureSpec {
  std::vector<Antecedent> features;  // duplicate-free, in rule order
  TransformMode mode = TransformMode::AppendToLabelEncoded;
  std::optional<DiscretizationMap> discretization;

  /// Features that transform() appends under the current mode.
  std::vector<Antecedent> appended() const {
    std::vector<Antecedent> out;
    for (const auto& a : features) {
      if (mode == TransformMode::AppendToLabelEncoded || a.is_pair()) out.push_back(a);
    }
    return out;
  }
};

/// Antecedents of the rules in order; consequents are dropped, so rules
/// sharing an antecedent collapse into one feature.
inline FeatureSpec generate_features(std::span<const Rule> rules,
                                     TransformMode mode = TransformMode::AppendToLabelEncoded) {
  FeatureSpec spec;
  spec.mode = mode;
  for (const auto& r : rules) {
    if (std::find(spec.features.begin(), spec.features.end(), r.antecedent) == spec.features.end()) {
      spec.features.push_back(r.antecedent);
    }
  }
  return spec;
}

inline std::string item_name(const Dataset& ds, Item item) {
  const auto& fc = ds.feature(item.feature);
  return fc.name + "=" + fc.categories.at(item.category);
}

inline std::string feature_name(const Dataset& ds, const Antecedent& a) {
  std::string name = item_name(ds, a[0]);
  if (a.is_pair()) name += "&" + item_name(ds, a[1]);
  return name;
}

/// Dense row-major real matrix with column names.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  std::vector<std::string> names;

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  std::span<const double> row(std::size_t r) const { return {values.data() + r * cols, cols}; }
};

inline void check_spec(const Dataset& ds, const FeatureSpec& spec) {
  for (const auto& a : spec.features) {
    for (const auto& item : a.items()) {
      if (item.feature >= ds.num_features()) throw Error(ErrorCode::SchemaMismatch, "feature index out of range");
      const auto& fc = ds.feature(item.feature);
      if (!fc.categorical()) throw Error(ErrorCode::SchemaMismatch, "feature '" + fc.name + "' is not categorical");
      if (item.category >= fc.categories.size()) {
        throw Error(ErrorCode::SchemaMismatch, "category id out of range for '" + fc.name + "'");
      }
    }
  }
}

/// Materializes base columns (per mode) followed by one 0/1 indicator per
/// appended feature.
inline FeatureMatrix transform(const Dataset& input, const FeatureSpec& spec) {
  const Dataset ds = spec.discretization ? apply_discretization(input, *spec.discretization) : input;
  check_spec(ds, spec);
  const auto appended = spec.appended();

  FeatureMatrix m;
  m.rows = ds.rows();
  std::vector<std::size_t> offsets;  // first output column of each base feature
  if (spec.mode == TransformMode::AppendToLabelEncoded) {
    for (const auto& fc : ds.features()) {
      offsets.push_back(m.names.size());
      m.names.push_back(fc.name);
    }
  } else {
    if (!ds.all_categorical()) throw Error(ErrorCode::ContinuousPresent, "one-hot mode requires categorical features");
    for (const auto& fc : ds.features()) {
      offsets.push_back(m.names.size());
      for (const auto& cat : fc.categories) m.names.push_back(fc.name + "=" + cat);
    }
  }
  const std::size_t base = m.names.size();
  for (const auto& a : appended) m.names.push_back(feature_name(ds, a));
  m.cols = m.names.size();
  m.values.assign(m.rows * m.cols, 0.0);

  for (std::size_t r = 0; r < m.rows; ++r) {
    double* row = m.values.data() + r * m.cols;
    for (std::size_t f = 0; f < ds.num_features(); ++f) {
      const auto& fc = ds.feature(f);
      if (spec.mode == TransformMode::AppendToLabelEncoded) {
        row[offsets[f]] = fc.categorical() ? static_cast<double>(fc.codes[r]) : fc.values[r];
      } else {
        row[offsets[f] + fc.codes[r]] = 1.0;
      }
    }
    for (std::size_t k = 0; k < appended.size(); ++k) row[base + k] = appended[k].matches(ds, r) ? 1.0 : 0.0;
  }
  return m;
}

/// Writes the matrix plus the label column (last) as CSV.
inline void write_feature_csv(std::ostream& out, const FeatureMatrix& m, const Dataset& ds) {
  csv::Row row = m.names;
  row.push_back(ds.label_name());
  csv::write_row(out, row);
  for (std::size_t r = 0; r < m.rows; ++r) {
    row.clear();
    for (double v : m.row(r)) row.push_back(format_real(v));
    row.push_back(ds.classes()[ds.labels()[r]]);
    csv::write_row(out, row);
  }
}

struct SuggestedParams {
  std::size_t d_freq = 0;
  std::size_t d_conf = 0;

  friend bool operator==(const SuggestedParams&, const SuggestedParams&) = default;
};

/// d_freq = 5 |C| floor(sqrt p), d_conf = 5 floor(sqrt p): d_freq grows like
/// sqrt(p) and d_freq / d_conf = |C|.
inline SuggestedParams suggest_params(std::size_t p, std::size_t num_classes) {
  if (p < 1) throw Error(ErrorCode::InvalidArgument, "p must be at least 1");
  if (num_classes < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 classes");
  std::size_t root = static_cast<std::size_t>(std::sqrt(static_cast<double>(p)));
  while (root * root > p) --root;
  while ((root + 1) * (root + 1) <= p) ++root;
  return {5 * num_classes * root, 5 * root};
}

}  // namespace araf
