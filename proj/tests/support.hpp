#pragma once

#include <string>
#include <vector>

#include "araf/data_model.hpp"
#include "araf/miner.hpp"
#include "araf/random.hpp"

namespace araf::testing {

/// Random categorical dataset; every category id is used at least by
/// construction of the category list, not necessarily by a row.
inline Dataset random_dataset(Rng& rng, std::size_t n, std::size_t p, std::size_t max_categories,
                              std::size_t classes) {
  std::vector<FeatureColumn> cols;
  for (std::size_t f = 0; f < p; ++f) {
    FeatureColumn fc{"F" + std::to_string(f), ColumnKind::Categorical, {}, {}, {}};
    const std::size_t m = 1 + rng.uniform_index(max_categories);
    for (std::size_t k = 0; k < m; ++k) fc.categories.push_back("v" + std::to_string(k));
    // Skewed category draws so supports are spread and ties still occur.
    for (std::size_t r = 0; r < n; ++r) {
      const auto a = rng.uniform_index(m), b = rng.uniform_index(m);
      fc.codes.push_back(static_cast<std::uint32_t>(std::min(a, b)));
    }
    cols.push_back(std::move(fc));
  }
  std::vector<std::string> names;
  for (std::size_t c = 0; c < classes; ++c) names.push_back("c" + std::to_string(c));
  std::vector<std::uint32_t> labels(n);
  for (std::size_t r = 0; r < n; ++r) {
    // Labels loosely tied to the first feature.
    labels[r] = rng.bernoulli(0.6) ? cols[0].codes[r] % classes : static_cast<std::uint32_t>(rng.uniform_index(classes));
  }
  return Dataset(std::move(cols), "Y", std::move(names), std::move(labels));
}

inline MiningConfig random_config(Rng& rng, std::size_t classes) {
  MiningConfig c;
  c.d_freq = 1 + rng.uniform_index(60);
  c.d_conf = 1 + rng.uniform_index(c.d_freq);
  c.per_class = rng.bernoulli(0.5);
  c.scoring = static_cast<Scoring>(rng.uniform_index(3));
  c.reluctant = c.per_class && rng.bernoulli(0.5);
  c.threads = 1 + rng.uniform_index(3);
  (void)classes;
  return c;
}

}  // namespace araf::testing
