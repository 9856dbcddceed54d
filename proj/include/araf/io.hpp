#pragma once

// JSON forms of rules, frequent itemsets and discretization maps. Features
// and categories are written by name so files stay valid across re-encodings
// of the same columns.

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "araf/data_model.hpp"
#include "araf/discretizer.hpp"
#include "araf/error.hpp"
#include "araf/feature_gen.hpp"
#include "araf/miner.hpp"
#include "araf/random.hpp"
#include "araf/rules.hpp"

namespace araf::io {

using json = nlohmann::ordered_json;

inline json real(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json item_json(const Dataset& ds, Item item) {
  const auto& fc = ds.feature(item.feature);
  return {{"feature", fc.name}, {"category", fc.categories.at(item.category)}};
}

inline json antecedent_json(const Dataset& ds, const Antecedent& a) {
  json out = json::array();
  for (const auto& item : a.items()) out.push_back(item_json(ds, item));
  return out;
}

inline json rule_json(const Dataset& ds, const Rule& r) {
  return {{"antecedent", antecedent_json(ds, r.antecedent)},
          {"class", ds.classes().at(r.label)},
          {"support", r.support},
          {"confidence", real(r.confidence)},
          {"rconf", real(r.rconf)},
          {"lift", real(r.lift)}};
}

inline json itemset_json(const Dataset& ds, const ClassItemset& s) {
  return {{"items", antecedent_json(ds, s.antecedent)},
          {"class", ds.classes().at(s.label)},
          {"support", s.support},
          {"rank", s.rank}};
}

/// One JSON object per line, in the given order.
inline void write_itemset_lines(std::ostream& out, const Dataset& ds, std::span<const ClassItemset> itemsets) {
  for (const auto& s : itemsets) out << itemset_json(ds, s).dump() << '\n';
}

inline json map_json(const DiscretizationMap& map) {
  json out = json::array();
  for (const auto& e : map.entries) {
    out.push_back({{"column", e.column}, {"k", e.intervals()}, {"thresholds", e.thresholds}});
  }
  return out;
}

inline DiscretizationMap map_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "discretization map must be a JSON array");
  DiscretizationMap map;
  for (const auto& e : j) {
    DiscretizationEntry entry;
    try {
      entry.column = e.at("column").get<std::string>();
      entry.thresholds = e.at("thresholds").get<std::vector<double>>();
    } catch (const json::exception& ex) {
      throw Error(ErrorCode::ParseError, std::string("bad discretization entry: ") + ex.what());
    }
    for (std::size_t i = 1; i < entry.thresholds.size(); ++i) {
      if (!(entry.thresholds[i - 1] < entry.thresholds[i])) {
        throw Error(ErrorCode::ParseError, "thresholds of '" + entry.column + "' are not increasing");
      }
    }
    if (e.contains("k") && e.at("k").get<std::size_t>() != entry.intervals()) {
      throw Error(ErrorCode::ParseError, "k disagrees with threshold count for '" + entry.column + "'");
    }
    map.entries.push_back(std::move(entry));
  }
  return map;
}

inline json config_json(const MiningConfig& c) {
  return {{"d_freq", c.d_freq},     {"d_conf", c.d_conf},       {"per_class", c.per_class},
          {"scoring", to_string(c.scoring)}, {"reluctant", c.reluctant}, {"epsilon", c.epsilon}};
}

inline json sample_json(const SampleInfo& s) {
  return {{"n_prime", s.n_prime},
          {"seed", s.seed},
          {"rng", std::string(Rng::algorithm)},
          {"with_replacement", true},
          {"exact_confidence", s.exact_confidence}};
}

/// Rule file: rules plus enough context (label, optional map) for transform.
inline json rules_document(const Dataset& ds, std::span<const Rule> rules, const json& mining,
                           const std::optional<SampleInfo>& sample, const DiscretizationMap* map) {
  json doc;
  doc["label"] = ds.label_name();
  doc["mining"] = mining;
  doc["sample"] = sample ? sample_json(*sample) : json(nullptr);
  doc["discretization"] = map ? map_json(*map) : json(nullptr);
  json arr = json::array();
  for (const auto& r : rules) arr.push_back(rule_json(ds, r));
  doc["rules"] = std::move(arr);
  return doc;
}

/// Antecedent written by name, before it is resolved against a dataset.
struct NamedItem {
  std::string feature;
  std::string category;
};
using NamedAntecedent = std::vector<NamedItem>;

struct RulesFile {
  std::vector<NamedAntecedent> antecedents;  // in rule order, duplicates kept
  std::optional<DiscretizationMap> discretization;
};

inline RulesFile rules_from_json(const json& doc) {
  RulesFile out;
  try {
    for (const auto& r : doc.at("rules")) {
      NamedAntecedent a;
      for (const auto& it : r.at("antecedent")) {
        a.push_back({it.at("feature").get<std::string>(), it.at("category").get<std::string>()});
      }
      if (a.empty() || a.size() > 2) throw Error(ErrorCode::ParseError, "antecedent must hold 1 or 2 items");
      out.antecedents.push_back(std::move(a));
    }
    if (doc.contains("discretization") && !doc.at("discretization").is_null()) {
      out.discretization = map_from_json(doc.at("discretization"));
    }
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::ParseError, std::string("bad rules document: ") + ex.what());
  }
  return out;
}

/// Resolves named antecedents against `ds`. Unknown columns are a schema
/// mismatch; unknown categories are added to the dataset (they match no row).
inline std::pair<Dataset, std::vector<Antecedent>> resolve(Dataset ds, std::span<const NamedAntecedent> named) {
  std::vector<Antecedent> out;
  for (const auto& a : named) {
    std::vector<Item> items;
    for (const auto& n : a) {
      const auto f = ds.find_feature(n.feature);
      if (!f) throw Error(ErrorCode::SchemaMismatch, "rules reference unknown column '" + n.feature + "'");
      if (!ds.feature(*f).categorical()) {
        throw Error(ErrorCode::SchemaMismatch, "column '" + n.feature + "' is continuous and has no map entry");
      }
      auto [next, id] = ds.with_category(*f, n.category);
      ds = std::move(next);
      items.push_back({static_cast<std::uint32_t>(*f), id});
    }
    if (items.size() == 2 && items[0].feature == items[1].feature) {
      throw Error(ErrorCode::ParseError, "pair antecedent repeats column '" + a[0].feature + "'");
    }
    out.push_back(items.size() == 1 ? Antecedent::single(items[0]) : Antecedent::pair(items[0], items[1]));
  }
  return {std::move(ds), std::move(out)};
}

inline std::string_view to_string(TransformMode m) {
  return m == TransformMode::AppendToLabelEncoded ? "label" : "onehot";
}

inline TransformMode mode_from_string(std::string_view s) {
  if (s == "label") return TransformMode::AppendToLabelEncoded;
  if (s == "onehot") return TransformMode::AppendInteractionsToOneHot;
  throw Error(ErrorCode::ParseError, "unknown transform mode '" + std::string(s) + "'");
}

inline json spec_json(const Dataset& ds, const FeatureSpec& spec) {
  json features = json::array();
  for (const auto& a : spec.features) features.push_back(antecedent_json(ds, a));
  return {{"mode", to_string(spec.mode)},
          {"features", std::move(features)},
          {"discretization", spec.discretization ? map_json(*spec.discretization) : json(nullptr)}};
}

/// Inverse of spec_json against `ds` (categories resolved as in resolve()).
inline std::pair<Dataset, FeatureSpec> spec_from_json(const Dataset& ds, const json& j) {
  FeatureSpec spec;
  std::vector<NamedAntecedent> named;
  try {
    spec.mode = mode_from_string(j.at("mode").get<std::string>());
    for (const auto& f : j.at("features")) {
      NamedAntecedent a;
      for (const auto& it : f) a.push_back({it.at("feature").get<std::string>(), it.at("category").get<std::string>()});
      if (a.empty() || a.size() > 2) throw Error(ErrorCode::ParseError, "feature must hold 1 or 2 items");
      named.push_back(std::move(a));
    }
    if (j.contains("discretization") && !j.at("discretization").is_null()) {
      spec.discretization = map_from_json(j.at("discretization"));
    }
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::ParseError, std::string("bad feature spec: ") + ex.what());
  }
  auto [out, antecedents] = resolve(spec.discretization ? apply_discretization(ds, *spec.discretization) : ds, named);
  spec.features = std::move(antecedents);
  return {std::move(out), std::move(spec)};
}

}  // namespace araf::io
