#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "araf/data_model.hpp"
#include "araf/error.hpp"
#include "araf/miner.hpp"
#include "araf/random.hpp"

namespace araf {

struct SubsampleConfig {
  std::size_t n_prime = 1;
  std::uint64_t seed = 0;
  bool with_replacement = true;
};

/// Row indices of a uniform sample of the given size.
inline std::vector<std::size_t> sample_indices(std::size_t n, const SubsampleConfig& config) {
  if (n == 0) throw Error(ErrorCode::EmptyDataset, "cannot subsample an empty dataset");
  if (config.n_prime == 0) throw Error(ErrorCode::InvalidArgument, "n' must be at least 1");
  Rng rng(config.seed);
  std::vector<std::size_t> out;
  out.reserve(config.n_prime);
  if (config.with_replacement) {
    for (std::size_t i = 0; i < config.n_prime; ++i) out.push_back(rng.uniform_index(n));
    return out;
  }
  if (config.n_prime > n) throw Error(ErrorCode::InvalidArgument, "n' exceeds n when sampling without replacement");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = 0; i < config.n_prime; ++i) {
    std::swap(perm[i], perm[i + rng.uniform_index(n - i)]);
    out.push_back(perm[i]);
  }
  return out;
}

inline Dataset subsample(const Dataset& ds, const SubsampleConfig& config) {
  const auto idx = sample_indices(ds.rows(), config);
  return ds.select_rows(idx);
}

/// Smallest n' with 4 exp(-n' eps^2 / 2) <= delta: the sample size after
/// which two itemsets whose frequencies differ by eps are misordered with
/// probability at most delta.
inline std::size_t required_sample_size(double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::InvalidArgument, "delta must be in (0, 1)");
  return static_cast<std::size_t>(std::ceil(2.0 * std::log(4.0 / delta) / (epsilon * epsilon)));
}

/// Upper bound on P(|p_hat - p| >= eps) for a sample of n'.
inline double hoeffding_deviation_bound(std::size_t n_prime, double epsilon) {
  return 2.0 * std::exp(-2.0 * static_cast<double>(n_prime) * epsilon * epsilon);
}

/// Fraction of rows containing each class itemset, counted exactly on `ds`.
inline std::vector<double> itemset_frequencies(const Dataset& ds, std::span<const ClassItemset> itemsets) {
  require_categorical(ds);
  std::vector<std::uint64_t> hits(itemsets.size(), 0);
  const auto labels = ds.labels();
  for (std::size_t r = 0; r < ds.rows(); ++r) {
    for (std::size_t i = 0; i < itemsets.size(); ++i) {
      if (labels[r] == itemsets[i].label && itemsets[i].antecedent.matches(ds, r)) ++hits[i];
    }
  }
  std::vector<double> out;
  out.reserve(itemsets.size());
  for (auto h : hits) out.push_back(static_cast<double>(h) / static_cast<double>(ds.rows()));
  return out;
}

/// Frequency estimates p_hat from a seeded subsample of size n'.
inline std::vector<double> estimate_frequencies(const Dataset& ds, std::span<const ClassItemset> itemsets,
                                                const SubsampleConfig& config) {
  return itemset_frequencies(subsample(ds, config), itemsets);
}

}  // namespace araf
