#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "araf/data_model.hpp"
#include "araf/error.hpp"

namespace araf {

/// Shannon entropy in bits of a class histogram.
inline double entropy(std::span<const std::uint64_t> class_counts) {
  const std::uint64_t total = std::accumulate(class_counts.begin(), class_counts.end(), std::uint64_t{0});
  if (total == 0) throw Error(ErrorCode::AllZero, "entropy of an empty histogram");
  double h = 0.0;
  for (auto c : class_counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return std::max(h, 0.0);
}

/// Information gain of splitting `labels` into the parts given by
/// `partition` (one part index per row).
inline double info_gain(std::span<const std::uint32_t> labels, std::span<const std::size_t> partition) {
  if (labels.empty()) throw Error(ErrorCode::EmptyInput, "info_gain on empty labels");
  if (labels.size() != partition.size()) throw Error(ErrorCode::InvalidArgument, "labels/partition size mismatch");
  const std::size_t classes = *std::max_element(labels.begin(), labels.end()) + 1;
  const std::size_t parts = *std::max_element(partition.begin(), partition.end()) + 1;

  std::vector<std::uint64_t> whole(classes, 0);
  std::vector<std::uint64_t> per_part(parts * classes, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    ++whole[labels[i]];
    ++per_part[partition[i] * classes + labels[i]];
  }
  const double n = static_cast<double>(labels.size());
  double gain = entropy(whole);
  for (std::size_t k = 0; k < parts; ++k) {
    std::span<const std::uint64_t> counts(per_part.data() + k * classes, classes);
    const auto size = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    if (size > 0) gain -= static_cast<double>(size) / n * entropy(counts);
  }
  return std::max(gain, 0.0);
}

/// Thresholds for one continuous column. Interval i is (t[i-1], t[i]] with
/// -inf / +inf sentinels at the ends.
struct DiscretizationEntry {
  std::string column;
  std::vector<double> thresholds;
  bool degenerate = false;  // fewer distinct values than requested intervals

  std::size_t intervals() const { return thresholds.size() + 1; }
};

struct DiscretizationMap {
  std::vector<DiscretizationEntry> entries;

  const DiscretizationEntry* find(std::string_view column) const {
    for (const auto& e : entries) {
      if (e.column == column) return &e;
    }
    return nullptr;
  }
};

namespace detail {

// Sorted view of (value, label) with prefix class counts, so any index
// range's histogram is O(|C|).
class SortedColumn {
 public:
  SortedColumn(std::span<const double> values, std::span<const std::uint32_t> labels) {
    order_.resize(values.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    classes_ = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    sorted_.reserve(values.size());
    prefix_.assign((values.size() + 1) * classes_, 0);
    for (std::size_t i = 0; i < order_.size(); ++i) {
      sorted_.push_back(values[order_[i]]);
      std::copy_n(prefix_.begin() + i * classes_, classes_, prefix_.begin() + (i + 1) * classes_);
      ++prefix_[(i + 1) * classes_ + labels[order_[i]]];
    }
  }

  std::size_t size() const { return sorted_.size(); }
  double value(std::size_t i) const { return sorted_[i]; }

  // Weighted entropy |D_i| * Ent(D_i) of sorted range [lo, hi).
  double weighted_entropy(std::size_t lo, std::size_t hi) const {
    if (hi <= lo) return 0.0;
    std::vector<std::uint64_t> counts(classes_);
    for (std::size_t c = 0; c < classes_; ++c) counts[c] = prefix_[hi * classes_ + c] - prefix_[lo * classes_ + c];
    return static_cast<double>(hi - lo) * entropy(counts);
  }

 private:
  std::vector<std::size_t> order_;
  std::vector<double> sorted_;
  std::vector<std::uint64_t> prefix_;
  std::size_t classes_ = 0;
};

struct Interval {
  std::size_t lo;  // sorted index range [lo, hi)
  std::size_t hi;
};

}  // namespace detail

/// Candidate split positions inside the sorted range [lo, hi): for each of the
/// l-1 interior quantile ranks, the boundary between two distinct values
/// closest to that rank (ties go left). A boundary b splits between sorted
/// positions b-1 and b. Duplicates are removed.
inline std::vector<std::size_t> quantile_boundaries(std::span<const double> sorted, std::size_t lo, std::size_t hi,
                                                    std::size_t quantiles) {
  std::vector<std::size_t> boundaries;
  for (std::size_t b = lo + 1; b < hi; ++b) {
    if (sorted[b - 1] < sorted[b]) boundaries.push_back(b);
  }
  if (boundaries.empty()) return {};
  const double m = static_cast<double>(hi - lo);
  std::vector<std::size_t> picked;
  for (std::size_t j = 1; j < quantiles; ++j) {
    const double rank = static_cast<double>(lo) + m * static_cast<double>(j) / static_cast<double>(quantiles);
    auto it = std::lower_bound(boundaries.begin(), boundaries.end(), rank,
                               [](std::size_t b, double r) { return static_cast<double>(b) < r; });
    std::size_t best;
    if (it == boundaries.end()) {
      best = boundaries.back();
    } else if (it == boundaries.begin()) {
      best = *it;
    } else {
      const auto above = *it;
      const auto below = *(it - 1);
      best = (rank - static_cast<double>(below) <= static_cast<double>(above) - rank) ? below : above;
    }
    picked.push_back(best);
  }
  std::sort(picked.begin(), picked.end());
  picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
  return picked;
}

/// Greedy top-down split: k-1 rounds, each committing the single quantile
/// candidate (over all current intervals) with the largest information gain
/// of the resulting partition. Thresholds sit midway between neighbouring
/// distinct values.
inline DiscretizationEntry fit_discretizer(std::span<const double> values, std::span<const std::uint32_t> labels,
                                           std::size_t k, std::size_t l = 10) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "k must be at least 2");
  if (l < 2) throw Error(ErrorCode::InvalidArgument, "l must be at least 2");
  if (values.size() != labels.size()) throw Error(ErrorCode::InvalidArgument, "values/labels size mismatch");
  if (values.size() < k) {
    throw Error(ErrorCode::InsufficientRows, "need at least k=" + std::to_string(k) + " rows, got " +
                                                 std::to_string(values.size()));
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "non-finite value in continuous column");
  }

  const detail::SortedColumn column(values, labels);
  std::vector<double> sorted(column.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) sorted[i] = column.value(i);

  std::vector<detail::Interval> intervals{{0, column.size()}};
  std::vector<double> weighted{column.weighted_entropy(0, column.size())};
  DiscretizationEntry entry;

  for (std::size_t round = 1; round < k; ++round) {
    // Total weighted entropy is what IG subtracts; minimizing it maximizes IG.
    const double total = std::accumulate(weighted.begin(), weighted.end(), 0.0);
    bool found = false;
    double best_total = 0.0;
    double best_threshold = 0.0;
    std::size_t best_interval = 0;
    std::size_t best_boundary = 0;

    for (std::size_t i = 0; i < intervals.size(); ++i) {
      const auto [lo, hi] = intervals[i];
      for (auto b : quantile_boundaries(sorted, lo, hi, l)) {
        const double threshold = 0.5 * (sorted[b - 1] + sorted[b]);
        const double candidate =
            total - weighted[i] + column.weighted_entropy(lo, b) + column.weighted_entropy(b, hi);
        // Strict improvement keeps the leftmost threshold on ties; intervals
        // are scanned left to right and boundaries ascend within each.
        if (!found || candidate < best_total - 1e-12 * std::max(1.0, std::abs(best_total))) {
          found = true;
          best_total = candidate;
          best_threshold = threshold;
          best_interval = i;
          best_boundary = b;
        }
      }
    }
    if (!found) {
      entry.degenerate = true;
      break;
    }
    const auto [lo, hi] = intervals[best_interval];
    intervals[best_interval] = {lo, best_boundary};
    weighted[best_interval] = column.weighted_entropy(lo, best_boundary);
    intervals.insert(intervals.begin() + static_cast<std::ptrdiff_t>(best_interval) + 1, {best_boundary, hi});
    weighted.insert(weighted.begin() + static_cast<std::ptrdiff_t>(best_interval) + 1,
                    column.weighted_entropy(best_boundary, hi));
    entry.thresholds.insert(std::upper_bound(entry.thresholds.begin(), entry.thresholds.end(), best_threshold),
                            best_threshold);
  }
  return entry;
}

/// Interval index of each value; a value equal to a threshold falls in the
/// lower interval.
inline std::vector<std::uint32_t> apply_discretizer(const DiscretizationEntry& entry, std::span<const double> values) {
  std::vector<std::uint32_t> out;
  out.reserve(values.size());
  for (double v : values) {
    auto it = std::lower_bound(entry.thresholds.begin(), entry.thresholds.end(), v);
    out.push_back(static_cast<std::uint32_t>(it - entry.thresholds.begin()));
  }
  return out;
}

inline std::vector<std::string> interval_names(const DiscretizationEntry& entry) {
  std::vector<std::string> names;
  const auto& t = entry.thresholds;
  for (std::size_t i = 0; i <= t.size(); ++i) {
    const std::string lo = i == 0 ? "-inf" : format_real(t[i - 1]);
    const std::string hi = i == t.size() ? "inf)" : format_real(t[i]) + "]";
    names.push_back("(" + lo + "," + hi);
  }
  return names;
}

/// Fits every continuous column of `ds`; returns the map and the dataset with
/// those columns replaced by interval categories (ids = interval index).
inline std::pair<DiscretizationMap, Dataset> discretize_dataset(const Dataset& ds, std::size_t k, std::size_t l = 10) {
  DiscretizationMap map;
  Dataset out = ds;
  for (std::size_t f = 0; f < ds.num_features(); ++f) {
    const auto& fc = ds.feature(f);
    if (fc.categorical()) continue;
    auto entry = fit_discretizer(fc.values, ds.labels(), k, l);
    entry.column = fc.name;
    FeatureColumn column{fc.name, ColumnKind::Categorical, interval_names(entry), apply_discretizer(entry, fc.values), {}};
    out = out.with_feature(f, std::move(column));
    map.entries.push_back(std::move(entry));
  }
  return {std::move(map), std::move(out)};
}

/// Applies a previously fitted map to the continuous columns of `ds`.
/// Continuous columns without an entry are left untouched.
inline Dataset apply_discretization(const Dataset& ds, const DiscretizationMap& map) {
  Dataset out = ds;
  for (std::size_t f = 0; f < ds.num_features(); ++f) {
    const auto& fc = ds.feature(f);
    if (fc.categorical()) continue;
    const auto* entry = map.find(fc.name);
    if (!entry) continue;
    FeatureColumn column{fc.name, ColumnKind::Categorical, interval_names(*entry), apply_discretizer(*entry, fc.values),
                         {}};
    out = out.with_feature(f, std::move(column));
  }
  return out;
}

}  // namespace araf
