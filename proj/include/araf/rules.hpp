#pragma once

// Rule scoring (confidence, relative confidence, lift), Top-d_conf
// selection and the reluctant redundancy filter.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "araf/error.hpp"
#include "araf/miner.hpp"
#include "araf/sampler.hpp"

namespace araf {

inline std::string_view to_string(Scoring s) {
  switch (s) {
    case Scoring::Confidence: return "conf";
    case Scoring::RelativeConfidence: return "rconf";
    case Scoring::Lift: return "lift";
  }
  return "conf";
}

inline double confidence(std::uint64_t joint, std::uint64_t antecedent_total) {
  if (antecedent_total == 0) throw Error(ErrorCode::ZeroAntecedent, "antecedent never occurs");
  return static_cast<double>(joint) / static_cast<double>(antecedent_total);
}

/// Posterior class odds over prior class odds, in support form with
/// `epsilon` added to both denominators.
inline double relative_confidence(std::uint64_t joint, std::uint64_t antecedent_total, std::uint64_t class_total,
                                  std::uint64_t n, double epsilon) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  const double j = static_cast<double>(joint);
  const double a = static_cast<double>(antecedent_total);
  const double y = static_cast<double>(class_total);
  return j / (a - j + epsilon) * ((static_cast<double>(n) - y) / (y + epsilon));
}

inline double lift(std::uint64_t joint, std::uint64_t antecedent_total, std::uint64_t class_total, std::uint64_t n) {
  if (class_total == 0) throw Error(ErrorCode::ZeroClass, "class never occurs");
  return confidence(joint, antecedent_total) / (static_cast<double>(class_total) / static_cast<double>(n));
}

struct Rule {
  Antecedent antecedent;
  std::uint32_t label = 0;
  std::uint64_t support = 0;                      // supp(antecedent, class)
  std::vector<std::uint64_t> antecedent_counts;  // supp(antecedent, c') for every class c'
  double confidence = 0.0;
  double rconf = 0.0;
  double lift = 0.0;
  std::uint64_t rank = 0;

  std::uint64_t antecedent_total() const {
    return std::accumulate(antecedent_counts.begin(), antecedent_counts.end(), std::uint64_t{0});
  }

  double score(Scoring s) const {
    switch (s) {
      case Scoring::Confidence: return confidence;
      case Scoring::RelativeConfidence: return rconf;
      case Scoring::Lift: return lift;
    }
    return confidence;
  }

  friend bool operator==(const Rule&, const Rule&) = default;
};

/// Scores are zero when their denominator vanishes (an antecedent or class
/// absent from the counted rows), which only happens for zero-support rules.
inline Rule make_rule(const ClassItemset& s, std::span<const std::uint64_t> antecedent_counts,
                      std::span<const std::uint64_t> class_totals, std::uint64_t n, double epsilon) {
  Rule r;
  r.antecedent = s.antecedent;
  r.label = s.label;
  r.rank = s.rank;
  r.antecedent_counts.assign(antecedent_counts.begin(), antecedent_counts.end());
  r.support = r.antecedent_counts.at(s.label);
  const auto total = r.antecedent_total();
  const auto class_total = class_totals[s.label];
  if (total > 0) {
    r.confidence = confidence(r.support, total);
    if (class_total > 0) r.lift = lift(r.support, total, class_total, n);
  }
  r.rconf = relative_confidence(r.support, total, class_total, n, epsilon);
  return r;
}

inline std::vector<Rule> build_rules(std::span<const ClassItemset> itemsets, const SupportTable& support,
                                     double epsilon) {
  std::vector<Rule> out;
  out.reserve(itemsets.size());
  for (const auto& s : itemsets) {
    out.push_back(make_rule(s, support.per_class(s.antecedent), support.class_totals(), support.n(), epsilon));
  }
  return out;
}

/// Score descending, then enumeration rank ascending.
struct RuleOrder {
  Scoring scoring = Scoring::Confidence;

  bool operator()(const Rule& a, const Rule& b) const {
    const double sa = a.score(scoring);
    const double sb = b.score(scoring);
    if (sa != sb) return sa > sb;
    return a.rank < b.rank;
  }
};

inline std::vector<Rule> select_rules(std::span<const Rule> candidates, Scoring scoring, std::size_t d_conf) {
  TopKAccumulator<Rule, RuleOrder> acc(d_conf, RuleOrder{scoring});
  for (const auto& r : candidates) acc.push(r);
  return acc.sorted();
}

/// One rule per frequent itemset (antecedent -> its class), Top-d_conf.
inline std::vector<Rule> select_rules(const MiningResult& mined, const MiningConfig& config) {
  const auto itemsets = mined.frequent.flatten();
  const auto rules = build_rules(itemsets, mined.support, config.epsilon);
  return select_rules(rules, config.scoring, config.d_conf);
}

/// Reluctant selection. Within each class, frequent itemsets are visited by
/// support; 1-item rules always join the pool, and a 2-item rule joins only
/// if each parent 1-item rule of the same class is either absent from the
/// pool or scores strictly lower. The pool's Top-d_conf is returned.
inline std::vector<Rule> select_rules_reluctant(const MiningResult& mined, const MiningConfig& config) {
  std::vector<Rule> pool;
  std::map<std::pair<Item, std::uint32_t>, double> admitted_mains;

  for (const auto& group : mined.frequent.groups) {
    auto ordered = group;
    std::sort(ordered.begin(), ordered.end(), ItemsetOrder{});
    for (const auto& s : ordered) {
      auto rule = make_rule(s, mined.support.per_class(s.antecedent), mined.support.class_totals(), mined.support.n(),
                            config.epsilon);
      const double score = rule.score(config.scoring);
      if (!s.antecedent.is_pair()) {
        admitted_mains.emplace(std::pair{s.antecedent[0], s.label}, score);
        pool.push_back(std::move(rule));
        continue;
      }
      bool admit = true;
      for (const auto& parent : s.antecedent.items()) {
        auto it = admitted_mains.find({parent, s.label});
        if (it != admitted_mains.end() && !(score > it->second)) admit = false;
      }
      if (admit) pool.push_back(std::move(rule));
    }
  }
  return select_rules(pool, config.scoring, config.d_conf);
}

/// Rules from threshold-mined itemsets with confidence >= minconf, in the
/// itemsets' order.
inline std::vector<Rule> generate_rules_threshold(std::span<const ClassItemset> itemsets, const SupportTable& support,
                                                  double minconf, double epsilon = 1e-12) {
  if (!(minconf >= 0.0 && minconf <= 1.0)) throw Error(ErrorCode::InvalidArgument, "minconf must be in [0, 1]");
  std::vector<Rule> out;
  for (const auto& r : build_rules(itemsets, support, epsilon)) {
    if (r.antecedent_total() > 0 && r.confidence >= minconf) out.push_back(r);
  }
  return out;
}

inline std::vector<Rule> mine_with_thresholds(const Dataset& ds, double minsupp, double minconf,
                                              double epsilon = 1e-12, std::size_t threads = 1) {
  if (!(minconf > 0.0 && minconf <= 1.0)) throw Error(ErrorCode::InvalidArgument, "minconf must be in (0, 1]");
  const auto mined = frequent_with_threshold(ds, minsupp, threads);
  return generate_rules_threshold(mined.itemsets, mined.support, minconf, epsilon);
}

struct SampleInfo {
  std::size_t n_prime = 0;
  std::uint64_t seed = 0;
  bool exact_confidence = true;
};

struct PipelineResult {
  MiningResult mining;
  std::vector<Rule> rules;
  std::optional<SampleInfo> sample;
};

/// Recounts every frequent antecedent on `ds` and rewrites itemset supports
/// so rules are scored on the full database.
inline void recount_on(const Dataset& ds, MiningResult& mined, std::size_t threads) {
  std::vector<Antecedent> pairs;
  for (const auto& g : mined.frequent.groups) {
    for (const auto& s : g) {
      if (s.antecedent.is_pair()) pairs.push_back(s.antecedent);
    }
  }
  mined.support.singles = count_singletons(ds, threads);
  mined.support.pairs = count_pair_antecedents(ds, std::move(pairs), threads);
  for (auto& g : mined.frequent.groups) {
    for (auto& s : g) s.support = mined.support.count(s.antecedent, s.label);
    std::sort(g.begin(), g.end(), ItemsetOrder{});
  }
}

/// Full configured pipeline: optional subsampling, fixed-size mining, then
/// plain or reluctant rule selection.
inline PipelineResult run_pipeline(const Dataset& ds, const MiningConfig& config) {
  config.validate();
  PipelineResult out;
  if (config.subsample) {
    const auto sample = subsample(ds, {*config.subsample, config.seed, true});
    out.mining = mine_frequent(sample, config);
    if (config.exact_confidence) recount_on(ds, out.mining, config.threads);
    out.sample = SampleInfo{*config.subsample, config.seed, config.exact_confidence};
  } else {
    out.mining = mine_frequent(ds, config);
  }
  out.rules = config.reluctant ? select_rules_reluctant(out.mining, config) : select_rules(out.mining, config);
  return out;
}

}  // namespace araf
