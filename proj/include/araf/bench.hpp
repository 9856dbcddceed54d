#pragma once

// Synthetic generators, the exhaustive mining oracle, a small multinomial
// logistic regression evaluator and the trial harness built on them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "araf/data_model.hpp"
#include "araf/error.hpp"
#include "araf/feature_gen.hpp"
#include "araf/miner.hpp"
#include "araf/random.hpp"
#include "araf/rules.hpp"
#include "araf/sampler.hpp"

namespace araf::bench {

enum class Variant { FreqBench, S1, S2 };

inline std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::FreqBench: return "freq";
    case Variant::S1: return "s1";
    case Variant::S2: return "s2";
  }
  return "s1";
}

struct SynthConfig {
  std::size_t n = 1000;
  std::size_t p = 99;
  Variant variant = Variant::S1;
  double noise_rate = 0.05;
  std::uint64_t seed = 0;
};

namespace detail {

inline FeatureColumn binary_column(std::size_t index) {
  return FeatureColumn{"X" + std::to_string(index + 1), ColumnKind::Categorical, {"0", "1"}, {}, {}};
}

inline std::vector<FeatureColumn> binary_columns(std::size_t p, std::size_t n) {
  std::vector<FeatureColumn> cols;
  cols.reserve(p);
  for (std::size_t f = 0; f < p; ++f) {
    cols.push_back(binary_column(f));
    cols.back().codes.resize(n);
  }
  return cols;
}

}  // namespace detail

/// X1 ~ Bern(0.3), X2..Xp ~ Bern(0.5); Y = 0 if X1 = 0, 2 if X1 = X2 = X3 = 1,
/// else 1. Then round(noise_rate * n) distinct rows get a uniform label.
inline Dataset gen_s1(const SynthConfig& config) {
  if (config.n < 1) throw Error(ErrorCode::InvalidArgument, "n must be at least 1");
  if (config.p < 3) throw Error(ErrorCode::InvalidArgument, "S1 needs p >= 3");
  if (!(config.noise_rate >= 0.0 && config.noise_rate <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "noise_rate must be in [0, 1]");
  }
  Rng rng(config.seed);
  auto cols = detail::binary_columns(config.p, config.n);
  std::vector<std::uint32_t> labels(config.n);
  for (std::size_t r = 0; r < config.n; ++r) {
    for (std::size_t f = 0; f < config.p; ++f) cols[f].codes[r] = rng.bernoulli(f == 0 ? 0.3 : 0.5) ? 1 : 0;
    const bool x1 = cols[0].codes[r], x2 = cols[1].codes[r], x3 = cols[2].codes[r];
    labels[r] = !x1 ? 0 : (x2 && x3 ? 2 : 1);
  }
  const auto noisy = static_cast<std::size_t>(std::llround(config.noise_rate * static_cast<double>(config.n)));
  std::vector<std::size_t> perm(config.n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = 0; i < noisy; ++i) {
    std::swap(perm[i], perm[i + rng.uniform_index(config.n - i)]);
    labels[perm[i]] = static_cast<std::uint32_t>(rng.uniform_index(3));
  }
  return Dataset(std::move(cols), "Y", {"0", "1", "2"}, std::move(labels));
}

/// S1 with the last two features forced to 1 (X98 and X99 at p = 99). The
/// other columns and the labels equal gen_s1 for the same seed.
inline Dataset gen_s2(const SynthConfig& config) {
  if (config.p < 5) throw Error(ErrorCode::InvalidArgument, "S2 needs p >= 5");
  const Dataset s1 = gen_s1(config);
  Dataset out = s1;
  for (std::size_t f = config.p - 2; f < config.p; ++f) {
    auto column = s1.feature(f);
    std::fill(column.codes.begin(), column.codes.end(), 1u);
    out = out.with_feature(f, std::move(column));
  }
  return out;
}

/// X1 ~ Bern(0.9); P(X2 = 1 | X1 = 1) = 75/90, P(X2 = 1 | X1 = 0) = 0.5;
/// X3 ~ Bern(0.7); X4..Xp ~ Bern(0.5); every label is 1.
inline Dataset gen_freq_bench(const SynthConfig& config) {
  if (config.n < 1) throw Error(ErrorCode::InvalidArgument, "n must be at least 1");
  if (config.p < 3) throw Error(ErrorCode::InvalidArgument, "frequency benchmark needs p >= 3");
  Rng rng(config.seed);
  auto cols = detail::binary_columns(config.p, config.n);
  for (std::size_t r = 0; r < config.n; ++r) {
    const bool x1 = rng.bernoulli(0.9);
    cols[0].codes[r] = x1;
    cols[1].codes[r] = rng.bernoulli(x1 ? 75.0 / 90.0 : 0.5);
    cols[2].codes[r] = rng.bernoulli(0.7);
    for (std::size_t f = 3; f < config.p; ++f) cols[f].codes[r] = rng.bernoulli(0.5);
  }
  return Dataset(std::move(cols), "Y", {"1"}, std::vector<std::uint32_t>(config.n, 0));
}

inline Dataset generate(const SynthConfig& config) {
  switch (config.variant) {
    case Variant::FreqBench: return gen_freq_bench(config);
    case Variant::S1: return gen_s1(config);
    case Variant::S2: return gen_s2(config);
  }
  return gen_s1(config);
}

// ---------------------------------------------------------------------------
// Exhaustive oracle. Shares no code path with the miner beyond the Dataset
// and the ClassItemset/Rule value types: every 1- and 2-item class itemset
// is counted from per-feature-pair contingency tables, ranked by the
// documented enumeration order, and sorted in full.

struct ExhaustiveCounts {
  std::size_t classes = 0;
  std::vector<ClassItemset> all;  // every 1- and 2-item class itemset
  std::map<Antecedent, std::vector<std::uint64_t>> per_class;
  std::vector<std::uint64_t> class_totals;
  std::uint64_t n = 0;
};

inline ExhaustiveCounts enumerate_all(const Dataset& ds) {
  if (ds.rows() > 2000 || ds.num_features() > 20) {
    throw Error(ErrorCode::TooLarge, "exhaustive oracle limited to n <= 2000, p <= 20");
  }
  require_categorical(ds);
  const std::size_t p = ds.num_features();
  const std::size_t classes = ds.num_classes();
  ExhaustiveCounts out;
  out.classes = classes;
  out.n = ds.rows();
  out.class_totals.assign(classes, 0);
  for (auto y : ds.labels()) ++out.class_totals[y];

  // Singleton rank: running index over (feature, category, class).
  std::vector<std::vector<std::uint64_t>> first_rank(p);
  std::uint64_t space = 0;
  for (std::size_t f = 0; f < p; ++f) {
    for (std::size_t cat = 0; cat < ds.category_count(f); ++cat) {
      first_rank[f].push_back(space);
      space += classes;
    }
  }

  for (std::size_t f = 0; f < p; ++f) {
    const std::size_t m = ds.category_count(f);
    std::vector<std::uint64_t> table(m * classes, 0);
    for (std::size_t r = 0; r < ds.rows(); ++r) ++table[ds.code(r, f) * classes + ds.labels()[r]];
    for (std::size_t cat = 0; cat < m; ++cat) {
      const Item item{static_cast<std::uint32_t>(f), static_cast<std::uint32_t>(cat)};
      const auto a = Antecedent::single(item);
      std::vector<std::uint64_t> counts(table.begin() + cat * classes, table.begin() + (cat + 1) * classes);
      for (std::uint32_t c = 0; c < classes; ++c) out.all.push_back({a, c, counts[c], first_rank[f][cat] + c});
      out.per_class.emplace(a, std::move(counts));
    }
  }
  for (std::size_t f1 = 0; f1 < p; ++f1) {
    for (std::size_t f2 = f1 + 1; f2 < p; ++f2) {
      const std::size_t m1 = ds.category_count(f1), m2 = ds.category_count(f2);
      std::vector<std::uint64_t> table(m1 * m2 * classes, 0);
      for (std::size_t r = 0; r < ds.rows(); ++r) {
        ++table[(ds.code(r, f1) * m2 + ds.code(r, f2)) * classes + ds.labels()[r]];
      }
      for (std::size_t c1 = 0; c1 < m1; ++c1) {
        for (std::size_t c2 = 0; c2 < m2; ++c2) {
          const auto a = Antecedent::pair({static_cast<std::uint32_t>(f1), static_cast<std::uint32_t>(c1)},
                                          {static_cast<std::uint32_t>(f2), static_cast<std::uint32_t>(c2)});
          const auto base = table.begin() + static_cast<std::ptrdiff_t>((c1 * m2 + c2) * classes);
          std::vector<std::uint64_t> counts(base, base + static_cast<std::ptrdiff_t>(classes));
          for (std::uint32_t c = 0; c < classes; ++c) {
            const auto rank = space + (first_rank[f1][c1] + c) * space + (first_rank[f2][c2] + c);
            out.all.push_back({a, c, counts[c], rank});
          }
          out.per_class.emplace(a, std::move(counts));
        }
      }
    }
  }
  return out;
}

inline bool oracle_before(const ClassItemset& a, const ClassItemset& b) {
  return a.support > b.support || (a.support == b.support && a.rank < b.rank);
}

inline FrequentSets brute_force_topk(const ExhaustiveCounts& counts, const MiningConfig& config) {
  FrequentSets out;
  out.per_class = config.per_class;
  const std::size_t groups = config.per_class ? counts.classes : 1;
  const std::size_t capacity =
      config.per_class ? std::max<std::size_t>(1, config.d_freq / counts.classes) : config.d_freq;
  for (std::size_t g = 0; g < groups; ++g) {
    std::vector<ClassItemset> members;
    for (const auto& s : counts.all) {
      if (!config.per_class || s.label == g) members.push_back(s);
    }
    std::sort(members.begin(), members.end(), oracle_before);
    if (members.size() > capacity) members.resize(capacity);
    out.groups.push_back(std::move(members));
  }
  return out;
}

inline FrequentSets brute_force_topk(const Dataset& ds, const MiningConfig& config) {
  return brute_force_topk(enumerate_all(ds), config);
}

/// Reference rule selection over oracle output: full sorts and linear
/// scans in place of heaps and maps.
inline std::vector<Rule> reference_select(const ExhaustiveCounts& counts, const FrequentSets& frequent,
                                          const MiningConfig& config) {
  auto rule_of = [&](const ClassItemset& s) {
    return make_rule(s, counts.per_class.at(s.antecedent), counts.class_totals, counts.n, config.epsilon);
  };
  auto before = [&](const Rule& a, const Rule& b) {
    const double sa = a.score(config.scoring), sb = b.score(config.scoring);
    return sa > sb || (sa == sb && a.rank < b.rank);
  };

  std::vector<Rule> pool;
  if (!config.reluctant) {
    for (const auto& g : frequent.groups) {
      for (const auto& s : g) pool.push_back(rule_of(s));
    }
  } else {
    for (const auto& g : frequent.groups) {
      auto ordered = g;
      std::sort(ordered.begin(), ordered.end(), oracle_before);
      std::vector<Rule> mains;
      for (const auto& s : ordered) {
        Rule r = rule_of(s);
        if (s.antecedent.size() == 1) {
          mains.push_back(r);
          pool.push_back(r);
          continue;
        }
        bool ok = true;
        for (std::size_t i = 0; i < 2; ++i) {
          for (const auto& m : mains) {
            if (m.label == r.label && m.antecedent[0] == r.antecedent[i] &&
                r.score(config.scoring) <= m.score(config.scoring)) {
              ok = false;
            }
          }
        }
        if (ok) pool.push_back(r);
      }
    }
  }
  std::sort(pool.begin(), pool.end(), before);
  if (pool.size() > config.d_conf) pool.resize(config.d_conf);
  return pool;
}

// ---------------------------------------------------------------------------
// Multinomial logistic regression with an L2 penalty, trained by fixed-step
// accelerated gradient descent on standardized features.

struct LogRegOptions {
  double l2_penalty = 30.0;  // objective: mean cross-entropy + l2 / (2n) * ||W||^2 (bias unpenalized)
  std::size_t max_iters = 500;
  double tol = 1e-6;        // stop when the largest gradient entry falls below tol
};

struct LogRegModel {
  std::size_t features = 0;
  std::size_t classes = 0;
  std::vector<double> mean;
  std::vector<double> scale;
  std::vector<double> weights;  // [feature * classes + class], standardized space
  std::vector<double> bias;     // [class]
  std::size_t iterations = 0;
};

struct Evaluation {
  double logloss = 0.0;
  double accuracy = 0.0;
};

namespace detail {

inline void softmax_row(const LogRegModel& m, std::span<const double> z, std::span<double> out) {
  for (std::size_t k = 0; k < m.classes; ++k) out[k] = m.bias[k];
  for (std::size_t j = 0; j < m.features; ++j) {
    if (z[j] == 0.0) continue;
    const double* w = m.weights.data() + j * m.classes;
    for (std::size_t k = 0; k < m.classes; ++k) out[k] += z[j] * w[k];
  }
  const double mx = *std::max_element(out.begin(), out.end());
  double sum = 0.0;
  for (auto& v : out) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (auto& v : out) v /= sum;
}

inline std::vector<double> standardize(const LogRegModel& m, const FeatureMatrix& x) {
  std::vector<double> z(x.rows * x.cols);
  for (std::size_t r = 0; r < x.rows; ++r) {
    for (std::size_t j = 0; j < x.cols; ++j) z[r * x.cols + j] = (x.at(r, j) - m.mean[j]) / m.scale[j];
  }
  return z;
}

}  // namespace detail

inline LogRegModel train_logreg(const FeatureMatrix& x, std::span<const std::uint32_t> labels, std::size_t classes,
                                const LogRegOptions& options = {}) {
  if (x.rows != labels.size() || x.rows == 0) throw Error(ErrorCode::InvalidArgument, "feature/label size mismatch");
  for (double v : x.values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "non-finite feature value");
  }
  std::vector<std::uint8_t> seen(classes, 0);
  for (auto y : labels) {
    if (y >= classes) throw Error(ErrorCode::InvalidArgument, "label out of range");
    seen[y] = 1;
  }
  if (std::count(seen.begin(), seen.end(), 1) < 2) throw Error(ErrorCode::SingleClass, "need two classes to train");

  const std::size_t n = x.rows, d = x.cols, k = classes;
  LogRegModel m;
  m.features = d;
  m.classes = k;
  m.mean.assign(d, 0.0);
  m.scale.assign(d, 1.0);
  for (std::size_t j = 0; j < d; ++j) {
    double s = 0.0, ss = 0.0;
    for (std::size_t r = 0; r < n; ++r) s += x.at(r, j);
    const double mu = s / static_cast<double>(n);
    for (std::size_t r = 0; r < n; ++r) ss += (x.at(r, j) - mu) * (x.at(r, j) - mu);
    const double sd = std::sqrt(ss / static_cast<double>(n));
    m.mean[j] = mu;
    m.scale[j] = sd > 1e-12 ? sd : 1.0;
  }
  const auto z = detail::standardize(m, x);

  // Step 1/L with L bounding the Hessian: 0.5 * lambda_max(Z'Z/n) for the
  // weights (power iteration), 0.5 for the bias, plus the ridge term.
  double lambda = 1.0;
  {
    std::vector<double> v(d, 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(d, 1)))), u(n), next(d);
    for (int it = 0; it < 50 && d > 0; ++it) {
      for (std::size_t r = 0; r < n; ++r) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += z[r * d + j] * v[j];
        u[r] = s;
      }
      std::fill(next.begin(), next.end(), 0.0);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t j = 0; j < d; ++j) next[j] += z[r * d + j] * u[r];
      }
      double norm = 0.0;
      for (auto& e : next) {
        e /= static_cast<double>(n);
        norm += e * e;
      }
      norm = std::sqrt(norm);
      if (norm == 0.0) break;
      lambda = norm;
      for (std::size_t j = 0; j < d; ++j) v[j] = next[j] / norm;
    }
  }
  const double lipschitz = 0.5 * std::max(lambda * 1.05, 1.0) + options.l2_penalty / static_cast<double>(n);
  const double step = 1.0 / lipschitz;

  const std::size_t np = d * k + k;  // weights then bias
  std::vector<double> theta(np, 0.0), prev(np, 0.0), look(np, 0.0), grad(np, 0.0), prob(k);
  auto unpack = [&](const std::vector<double>& t) {
    m.weights.assign(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(d * k));
    m.bias.assign(t.begin() + static_cast<std::ptrdiff_t>(d * k), t.end());
  };

  for (std::size_t iter = 0; iter < options.max_iters; ++iter) {
    const double momentum = static_cast<double>(iter) / static_cast<double>(iter + 3);
    for (std::size_t i = 0; i < np; ++i) look[i] = theta[i] + momentum * (theta[i] - prev[i]);
    unpack(look);
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      std::span<const double> zr(z.data() + r * d, d);
      detail::softmax_row(m, zr, prob);
      prob[labels[r]] -= 1.0;
      for (std::size_t j = 0; j < d; ++j) {
        if (zr[j] == 0.0) continue;
        double* g = grad.data() + j * k;
        for (std::size_t c = 0; c < k; ++c) g[c] += zr[j] * prob[c];
      }
      for (std::size_t c = 0; c < k; ++c) grad[d * k + c] += prob[c];
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < np; ++i) {
      grad[i] /= static_cast<double>(n);
      if (i < d * k) grad[i] += options.l2_penalty / static_cast<double>(n) * look[i];
      worst = std::max(worst, std::abs(grad[i]));
    }
    m.iterations = iter + 1;
    if (worst < options.tol) {
      theta = look;
      break;
    }
    prev = theta;
    for (std::size_t i = 0; i < np; ++i) theta[i] = look[i] - step * grad[i];
  }
  unpack(theta);
  return m;
}

inline std::vector<double> predict_proba(const LogRegModel& m, const FeatureMatrix& x) {
  if (x.cols != m.features) throw Error(ErrorCode::SchemaMismatch, "feature count differs from the trained model");
  const auto z = detail::standardize(m, x);
  std::vector<double> out(x.rows * m.classes);
  for (std::size_t r = 0; r < x.rows; ++r) {
    detail::softmax_row(m, {z.data() + r * x.cols, x.cols}, {out.data() + r * m.classes, m.classes});
  }
  return out;
}

inline Evaluation evaluate(const LogRegModel& m, const FeatureMatrix& x, std::span<const std::uint32_t> labels) {
  if (x.rows != labels.size() || x.rows == 0) throw Error(ErrorCode::InvalidArgument, "feature/label size mismatch");
  const auto proba = predict_proba(m, x);
  Evaluation e;
  std::size_t hits = 0;
  for (std::size_t r = 0; r < x.rows; ++r) {
    const double* p = proba.data() + r * m.classes;
    e.logloss -= std::log(std::max(p[labels[r]], 1e-15));
    const auto best = static_cast<std::uint32_t>(std::max_element(p, p + m.classes) - p);
    hits += best == labels[r];
  }
  e.logloss /= static_cast<double>(x.rows);
  e.accuracy = static_cast<double>(hits) / static_cast<double>(x.rows);
  return e;
}

// ---------------------------------------------------------------------------
// Trial harness.

enum class Method { Origin, Alg4, Alg5, Alg6 };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::Origin: return "origin";
    case Method::Alg4: return "alg4";
    case Method::Alg5: return "alg5";
    case Method::Alg6: return "alg6";
  }
  return "origin";
}

/// alg4: global heap, confidence. alg5: per-class heaps, relative
/// confidence. alg6: alg5 plus the reluctant filter.
inline MiningConfig method_config(Method method, std::size_t d_freq, std::size_t d_conf) {
  MiningConfig c;
  c.d_freq = d_freq;
  c.d_conf = d_conf;
  c.per_class = method != Method::Alg4;
  c.scoring = method == Method::Alg4 ? Scoring::Confidence : Scoring::RelativeConfidence;
  c.reluctant = method == Method::Alg6;
  return c;
}

/// Per-class shuffled split; each class contributes round(fraction * size)
/// rows to the training side. Both sides keep the original row order.
inline std::pair<Dataset, Dataset> stratified_split(const Dataset& ds, double train_fraction, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<std::size_t>> by_class(ds.num_classes());
  for (std::size_t r = 0; r < ds.rows(); ++r) by_class[ds.labels()[r]].push_back(r);
  std::vector<std::size_t> train, test;
  for (auto& rows : by_class) {
    for (std::size_t i = rows.size(); i > 1; --i) std::swap(rows[i - 1], rows[rng.uniform_index(i)]);
    const auto take = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(rows.size())));
    train.insert(train.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(take));
    test.insert(test.end(), rows.begin() + static_cast<std::ptrdiff_t>(take), rows.end());
  }
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {ds.select_rows(train), ds.select_rows(test)};
}

inline std::string rule_label(const Dataset& ds, const Rule& r) {
  std::string s = "(";
  for (std::size_t i = 0; i < r.antecedent.size(); ++i) {
    if (i) s += ",";
    s += item_name(ds, r.antecedent[i]);
  }
  return s + ")->" + ds.classes().at(r.label);
}

struct TrialOptions {
  std::size_t n = 1000;
  std::size_t p = 99;
  double noise_rate = 0.05;
  std::size_t d_freq = 45;
  std::size_t d_conf = 5;
  double train_fraction = 0.7;
  LogRegOptions logreg{};
  bool evaluate_models = true;
};

struct MethodOutcome {
  Method method = Method::Origin;
  std::vector<std::string> rules;  // rules mined on the full trial dataset
  Evaluation eval;                 // LR on the held-out split (when evaluated)
};

struct TrialOutcome {
  Variant variant = Variant::S1;
  std::uint64_t seed = 0;
  std::vector<MethodOutcome> methods;  // origin, alg4, alg5, alg6
};

inline TrialOutcome run_trial(Variant variant, std::uint64_t seed, const TrialOptions& options = {}) {
  if (variant == Variant::FreqBench) throw Error(ErrorCode::InvalidArgument, "run_trial covers S1/S2 only");
  TrialOutcome out;
  out.variant = variant;
  out.seed = seed;
  const Dataset ds = generate({options.n, options.p, variant, options.noise_rate, seed});

  std::optional<std::pair<Dataset, Dataset>> split;
  if (options.evaluate_models) split = stratified_split(ds, options.train_fraction, mix_seed(seed, 1));

  for (auto method : {Method::Origin, Method::Alg4, Method::Alg5, Method::Alg6}) {
    MethodOutcome mo;
    mo.method = method;
    FeatureSpec spec;
    if (method != Method::Origin) {
      const auto config = method_config(method, options.d_freq, options.d_conf);
      for (const auto& r : run_pipeline(ds, config).rules) mo.rules.push_back(rule_label(ds, r));
      if (split) spec = generate_features(run_pipeline(split->first, config).rules);
    }
    if (split) {
      const auto train = transform(split->first, spec);
      const auto test = transform(split->second, spec);
      const auto model = train_logreg(train, split->first.labels(), ds.num_classes(), options.logreg);
      mo.eval = evaluate(model, test, split->second.labels());
    }
    out.methods.push_back(std::move(mo));
  }
  return out;
}

/// The five rules that generate S1/S2 labels, as rule_label strings.
inline std::vector<std::string> ground_truth_rules() {
  return {"(X1=0)->0", "(X1=1,X2=0)->1", "(X1=1,X3=0)->1", "(X1=1,X2=1)->2", "(X1=1,X3=1)->2"};
}

/// Ground-truth itemsets of the frequency benchmark (label class 0) with
/// their exact frequencies.
inline std::vector<std::pair<ClassItemset, double>> freq_bench_truth() {
  auto one = [](std::uint32_t f) { return Item{f, 1}; };
  return {
      {{Antecedent::single(one(0)), 0, 0, 0}, 0.9},
      {{Antecedent::single(one(1)), 0, 0, 0}, 0.8},
      {{Antecedent::pair(one(0), one(1)), 0, 0, 0}, 0.75},
      {{Antecedent::single(one(2)), 0, 0, 0}, 0.7},
  };
}

struct FreqTrialOptions {
  std::size_t n = 10000;
  std::size_t p = 10;
  std::size_t d_freq = 5;
};

struct FreqTrialOutcome {
  std::size_t n_prime = 0;
  std::uint64_t seed = 0;
  std::vector<bool> recovered;    // per freq_bench_truth() entry: in the mined top d_freq
  std::vector<double> estimates;  // subsample frequency of each truth itemset
  double mean_abs_error = 0.0;    // against the generative frequencies

  bool all_recovered() const { return std::all_of(recovered.begin(), recovered.end(), [](bool b) { return b; }); }
};

/// Mines the global top d_freq itemsets from a size-n' subsample of a fresh
/// frequency-benchmark dataset.
inline FreqTrialOutcome run_freq_trial(std::size_t n_prime, std::uint64_t seed, const FreqTrialOptions& options = {}) {
  const Dataset ds = generate({options.n, options.p, Variant::FreqBench, 0.0, seed});
  const Dataset sample = subsample(ds, {n_prime, mix_seed(seed, 2), true});
  MiningConfig config;
  config.d_freq = options.d_freq;
  config.d_conf = 1;
  const auto mined = mine_frequent(sample, config).frequent.flatten();

  FreqTrialOutcome out;
  out.n_prime = n_prime;
  out.seed = seed;
  const auto truth = freq_bench_truth();
  std::vector<ClassItemset> itemsets;
  for (const auto& [s, freq] : truth) itemsets.push_back(s);
  out.estimates = itemset_frequencies(sample, itemsets);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const auto& want = truth[i].first;
    out.recovered.push_back(std::any_of(mined.begin(), mined.end(), [&](const ClassItemset& s) {
      return s.antecedent == want.antecedent && s.label == want.label;
    }));
    out.mean_abs_error += std::abs(out.estimates[i] - truth[i].second);
  }
  out.mean_abs_error /= static_cast<double>(truth.size());
  return out;
}

}  // namespace araf::bench
