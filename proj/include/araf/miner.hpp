#pragma once

// Support counting and fixed-capacity frequent itemset selection for class
// itemsets whose antecedent holds one or two items.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "araf/data_model.hpp"
#include "araf/error.hpp"
#include "araf/parallel.hpp"

namespace araf {

/// The predicate "feature == category".
struct Item {
  std::uint32_t feature = 0;
  std::uint32_t category = 0;

  auto operator<=>(const Item&) const = default;
};

/// One or two items; pairs are stored with strictly increasing features.
class Antecedent {
 public:
  Antecedent() = default;

  static Antecedent single(Item item) {
    Antecedent a;
    a.items_[0] = item;
    a.size_ = 1;
    return a;
  }

  static Antecedent pair(Item first, Item second) {
    if (first.feature == second.feature) {
      throw Error(ErrorCode::InvalidArgument, "pair antecedent needs two distinct features");
    }
    if (second.feature < first.feature) std::swap(first, second);
    Antecedent a;
    a.items_ = {first, second};
    a.size_ = 2;
    return a;
  }

  std::size_t size() const { return size_; }
  bool is_pair() const { return size_ == 2; }
  const Item& operator[](std::size_t i) const { return items_[i]; }
  std::span<const Item> items() const { return {items_.data(), size_}; }

  bool matches(const Dataset& ds, std::size_t row) const {
    for (std::size_t i = 0; i < size_; ++i) {
      if (ds.code(row, items_[i].feature) != items_[i].category) return false;
    }
    return true;
  }

  friend bool operator==(const Antecedent& a, const Antecedent& b) {
    return a.size_ == b.size_ && std::equal(a.items().begin(), a.items().end(), b.items().begin());
  }
  friend std::strong_ordering operator<=>(const Antecedent& a, const Antecedent& b) {
    if (auto c = a.size_ <=> b.size_; c != 0) return c;
    for (std::size_t i = 0; i < a.size_; ++i) {
      if (auto c = a.items_[i] <=> b.items_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

 private:
  std::array<Item, 2> items_{};
  std::uint8_t size_ = 0;
};

struct AntecedentHash {
  std::size_t operator()(const Antecedent& a) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ a.size();
    for (const auto& item : a.items()) {
      h = (h ^ item.feature) * 0x100000001b3ULL;
      h = (h ^ item.category) * 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

struct ClassItemset {
  Antecedent antecedent;
  std::uint32_t label = 0;
  std::uint64_t support = 0;
  std::uint64_t rank = 0;

  friend bool operator==(const ClassItemset&, const ClassItemset&) = default;
};

/// Dense numbering of items and the enumeration rank of class itemsets.
///
/// 1-itemsets are ranked by (feature, category, class). A pair with the
/// same class is ranked after every 1-itemset, ordered by the ranks of its
/// two constituents, so a main effect always precedes its interactions.
class ItemIndex {
 public:
  ItemIndex() = default;

  explicit ItemIndex(const Dataset& ds) : classes_(ds.num_classes()) {
    offsets_.reserve(ds.num_features() + 1);
    std::size_t offset = 0;
    for (std::size_t f = 0; f < ds.num_features(); ++f) {
      offsets_.push_back(offset);
      offset += ds.category_count(f);
    }
    offsets_.push_back(offset);
  }

  std::size_t num_items() const { return offsets_.empty() ? 0 : offsets_.back(); }
  std::size_t num_classes() const { return classes_; }
  std::size_t num_features() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t category_count(std::size_t f) const { return offsets_[f + 1] - offsets_[f]; }

  std::size_t item_id(Item item) const { return offsets_[item.feature] + item.category; }

  Item item(std::size_t id) const {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), id);
    const auto f = static_cast<std::size_t>(it - offsets_.begin()) - 1;
    return {static_cast<std::uint32_t>(f), static_cast<std::uint32_t>(id - offsets_[f])};
  }

  std::uint64_t singleton_space() const { return static_cast<std::uint64_t>(num_items()) * classes_; }

  std::uint64_t singleton_rank(Item item, std::uint32_t label) const {
    return static_cast<std::uint64_t>(item_id(item)) * classes_ + label;
  }

  std::uint64_t rank(const Antecedent& a, std::uint32_t label) const {
    if (!a.is_pair()) return singleton_rank(a[0], label);
    const auto space = singleton_space();
    return space + singleton_rank(a[0], label) * space + singleton_rank(a[1], label);
  }

 private:
  std::vector<std::size_t> offsets_;
  std::size_t classes_ = 0;
};

/// Support of every (item, class) pair, unobserved combinations included.
struct SingletonCounts {
  ItemIndex index;
  std::uint64_t n = 0;
  std::vector<std::uint64_t> class_totals;
  std::vector<std::uint64_t> counts;  // [item_id * |C| + class]

  std::uint64_t count(Item item, std::uint32_t label) const {
    return counts[index.item_id(item) * index.num_classes() + label];
  }
  std::span<const std::uint64_t> per_class(Item item) const {
    return {counts.data() + index.item_id(item) * index.num_classes(), index.num_classes()};
  }
  std::size_t entries() const { return counts.size(); }
};

/// Per-class counts of pair antecedents, keyed by canonical antecedent.
class PairCounts {
 public:
  PairCounts() = default;
  PairCounts(std::vector<Antecedent> antecedents, std::size_t classes)
      : antecedents_(std::move(antecedents)), classes_(classes), counts_(antecedents_.size() * classes, 0) {
    lookup_.reserve(antecedents_.size());
    for (std::size_t i = 0; i < antecedents_.size(); ++i) lookup_.emplace(antecedents_[i], i);
  }

  std::size_t size() const { return antecedents_.size(); }
  std::size_t entries() const { return counts_.size(); }
  std::size_t num_classes() const { return classes_; }
  const std::vector<Antecedent>& antecedents() const { return antecedents_; }

  bool contains(const Antecedent& a) const { return lookup_.contains(a); }

  std::span<const std::uint64_t> per_class(const Antecedent& a) const {
    auto it = lookup_.find(a);
    if (it == lookup_.end()) throw Error(ErrorCode::InvalidArgument, "pair antecedent was not counted");
    return {counts_.data() + it->second * classes_, classes_};
  }

  std::uint64_t total(const Antecedent& a) const {
    std::uint64_t t = 0;
    for (auto c : per_class(a)) t += c;
    return t;
  }

  std::span<std::uint64_t> mutable_counts() { return counts_; }

 private:
  std::vector<Antecedent> antecedents_;
  std::unordered_map<Antecedent, std::size_t, AntecedentHash> lookup_;
  std::size_t classes_ = 0;
  std::vector<std::uint64_t> counts_;  // [antecedent index * |C| + class]
};

struct SupportTable {
  SingletonCounts singles;
  PairCounts pairs;

  std::uint64_t n() const { return singles.n; }
  std::span<const std::uint64_t> class_totals() const { return singles.class_totals; }

  std::span<const std::uint64_t> per_class(const Antecedent& a) const {
    return a.is_pair() ? pairs.per_class(a) : singles.per_class(a[0]);
  }
  std::uint64_t count(const Antecedent& a, std::uint32_t label) const { return per_class(a)[label]; }
};

inline void require_categorical(const Dataset& ds) {
  if (!ds.all_categorical()) {
    throw Error(ErrorCode::ContinuousPresent, "mining requires categorical features; discretize continuous columns first");
  }
}

/// One pass over the rows. Workers count disjoint row ranges into private
/// tables that are summed afterwards.
inline SingletonCounts count_singletons(const Dataset& ds, std::size_t threads = 1) {
  require_categorical(ds);
  SingletonCounts out;
  out.index = ItemIndex(ds);
  out.n = ds.rows();
  out.class_totals = ds.class_totals();
  const std::size_t classes = ds.num_classes();
  const std::size_t width = out.index.num_items() * classes;
  const auto labels = ds.labels();

  const std::size_t workers = std::max<std::size_t>(1, std::min(threads, ds.rows()));
  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(width, 0));
  for_each_chunk(ds.rows(), workers, [&](std::size_t w, std::size_t begin, std::size_t end) {
    auto& table = partial[w];
    for (std::size_t f = 0; f < ds.num_features(); ++f) {
      const auto& codes = ds.feature(f).codes;
      const std::size_t base = out.index.item_id({static_cast<std::uint32_t>(f), 0});
      for (std::size_t r = begin; r < end; ++r) ++table[(base + codes[r]) * classes + labels[r]];
    }
  });
  out.counts.assign(width, 0);
  for (const auto& table : partial) {
    for (std::size_t i = 0; i < width; ++i) out.counts[i] += table[i];
  }
  return out;
}

/// Orders class itemsets by support (descending), then rank (ascending).
struct ItemsetOrder {
  bool operator()(const ClassItemset& a, const ClassItemset& b) const {
    if (a.support != b.support) return a.support > b.support;
    return a.rank < b.rank;
  }
};

/// Bounded selector keeping the `capacity` best values under `Better`, a
/// strict total order. Backed by a heap whose root is the worst kept value.
template <typename T, typename Better>
class TopKAccumulator {
 public:
  explicit TopKAccumulator(std::size_t capacity, Better better = Better{}) : capacity_(capacity), better_(better) {
    if (capacity_ == 0) throw Error(ErrorCode::InvalidArgument, "top-k capacity must be at least 1");
    heap_.reserve(capacity_);
  }

  void push(T value) {
    if (heap_.size() < capacity_) {
      heap_.push_back(std::move(value));
      std::push_heap(heap_.begin(), heap_.end(), better_);
    } else if (better_(value, heap_.front())) {
      std::pop_heap(heap_.begin(), heap_.end(), better_);
      heap_.back() = std::move(value);
      std::push_heap(heap_.begin(), heap_.end(), better_);
    }
  }

  std::size_t size() const { return heap_.size(); }
  std::size_t capacity() const { return capacity_; }

  /// Kept values, best first.
  std::vector<T> sorted() const {
    auto out = heap_;
    std::sort(out.begin(), out.end(), better_);
    return out;
  }

 private:
  std::size_t capacity_;
  Better better_;
  std::vector<T> heap_;
};

template <typename Range>
std::vector<ClassItemset> select_topk(const Range& itemsets, std::size_t capacity) {
  TopKAccumulator<ClassItemset, ItemsetOrder> acc(capacity);
  for (const auto& s : itemsets) acc.push(s);
  return acc.sorted();
}

/// Pair candidates from frequent 1-itemsets: every two members of the same
/// class on distinct features. Support is left at zero; output is in rank
/// order.
inline std::vector<ClassItemset> generate_pair_candidates(std::span<const ClassItemset> fs1, const ItemIndex& index) {
  std::vector<std::vector<Item>> by_class(index.num_classes());
  for (const auto& s : fs1) {
    if (!s.antecedent.is_pair()) by_class.at(s.label).push_back(s.antecedent[0]);
  }
  std::vector<ClassItemset> out;
  for (std::uint32_t c = 0; c < by_class.size(); ++c) {
    auto& items = by_class[c];
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    for (std::size_t i = 0; i < items.size(); ++i) {
      for (std::size_t j = i + 1; j < items.size(); ++j) {
        if (items[i].feature == items[j].feature) continue;
        auto a = Antecedent::pair(items[i], items[j]);
        out.push_back({a, c, 0, index.rank(a, c)});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const ClassItemset& x, const ClassItemset& y) { return x.rank < y.rank; });
  return out;
}

/// Counts each distinct candidate antecedent against every class in a
/// single pass, so confidence denominators need no further pass.
inline PairCounts count_pair_antecedents(const Dataset& ds, std::vector<Antecedent> antecedents,
                                         std::size_t threads = 1) {
  require_categorical(ds);
  std::sort(antecedents.begin(), antecedents.end());
  antecedents.erase(std::unique(antecedents.begin(), antecedents.end()), antecedents.end());
  const std::size_t classes = ds.num_classes();
  PairCounts table(antecedents, classes);
  if (antecedents.empty()) return table;

  // Distinct items referenced by the candidates; per row we flag which are
  // present, then test each candidate against the flags.
  std::vector<Item> items;
  for (const auto& a : antecedents) {
    items.push_back(a[0]);
    items.push_back(a[1]);
  }
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  std::vector<std::pair<std::uint32_t, std::uint32_t>> slots;  // item slot of each antecedent's two items
  slots.reserve(antecedents.size());
  auto slot_of = [&](Item it) {
    return static_cast<std::uint32_t>(std::lower_bound(items.begin(), items.end(), it) - items.begin());
  };
  for (const auto& a : antecedents) slots.emplace_back(slot_of(a[0]), slot_of(a[1]));

  const auto labels = ds.labels();
  const std::size_t workers = std::max<std::size_t>(1, std::min(threads, ds.rows()));
  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(table.entries(), 0));
  for_each_chunk(ds.rows(), workers, [&](std::size_t w, std::size_t begin, std::size_t end) {
    auto& counts = partial[w];
    std::vector<std::uint8_t> present(items.size());
    for (std::size_t r = begin; r < end; ++r) {
      for (std::size_t i = 0; i < items.size(); ++i) {
        present[i] = ds.code(r, items[i].feature) == items[i].category;
      }
      const std::size_t y = labels[r];
      for (std::size_t k = 0; k < slots.size(); ++k) {
        if (present[slots[k].first] & present[slots[k].second]) ++counts[k * classes + y];
      }
    }
  });
  auto merged = table.mutable_counts();
  for (const auto& counts : partial) {
    for (std::size_t i = 0; i < merged.size(); ++i) merged[i] += counts[i];
  }
  return table;
}

inline PairCounts count_pairs(const Dataset& ds, std::span<const ClassItemset> candidates, std::size_t threads = 1) {
  std::vector<Antecedent> antecedents;
  antecedents.reserve(candidates.size());
  for (const auto& c : candidates) {
    if (!c.antecedent.is_pair()) throw Error(ErrorCode::InvalidArgument, "count_pairs expects pair candidates");
    antecedents.push_back(c.antecedent);
  }
  return count_pair_antecedents(ds, std::move(antecedents), threads);
}

enum class Scoring { Confidence, RelativeConfidence, Lift };

struct MiningConfig {
  std::size_t d_freq = 45;
  std::size_t d_conf = 5;
  bool per_class = false;
  Scoring scoring = Scoring::Confidence;
  bool reluctant = false;
  double epsilon = 1e-12;
  std::optional<std::size_t> subsample;  // n' rows drawn with replacement
  std::uint64_t seed = 0;
  bool exact_confidence = true;  // recount frequent antecedents on the full data after subsampling
  std::size_t threads = 1;

  void validate() const {
    if (d_conf < 1 || d_conf > d_freq) {
      throw Error(ErrorCode::InvalidArgument, "require 1 <= d_conf <= d_freq");
    }
    if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
    if (subsample && *subsample == 0) throw Error(ErrorCode::InvalidArgument, "subsample size must be >= 1");
  }

  std::size_t per_class_capacity(std::size_t classes) const {
    return std::max<std::size_t>(1, d_freq / std::max<std::size_t>(1, classes));
  }
};

/// Frequent itemsets, one group per class in per-class mode or a single
/// group otherwise; each group sorted by ItemsetOrder.
struct FrequentSets {
  bool per_class = false;
  std::vector<std::vector<ClassItemset>> groups;

  std::vector<ClassItemset> flatten() const {
    std::vector<ClassItemset> out;
    for (const auto& g : groups) out.insert(out.end(), g.begin(), g.end());
    return out;
  }
  std::size_t size() const {
    std::size_t s = 0;
    for (const auto& g : groups) s += g.size();
    return s;
  }
};

struct MiningStats {
  std::size_t singleton_entries = 0;  // (item, class) cells counted in the first pass
  std::size_t pair_candidates = 0;    // class itemsets generated for the second pass
  std::size_t pair_antecedents = 0;   // distinct pair antecedents counted
  std::size_t pair_entries = 0;       // pair antecedents x classes
};

struct MiningResult {
  FrequentSets frequent;
  SupportTable support;
  MiningStats stats;
};

/// Fixed-capacity frequent itemset mining. Every 1-itemset is pushed into
/// its accumulator first; the survivors seed the pair candidates, which are
/// pushed into the same accumulator afterwards.
inline MiningResult mine_frequent(const Dataset& ds, const MiningConfig& config) {
  config.validate();
  MiningResult result;
  result.support.singles = count_singletons(ds, config.threads);
  const auto& singles = result.support.singles;
  const auto& index = singles.index;
  const std::size_t classes = index.num_classes();

  const std::size_t groups = config.per_class ? classes : 1;
  const std::size_t capacity = config.per_class ? config.per_class_capacity(classes) : config.d_freq;
  std::vector<TopKAccumulator<ClassItemset, ItemsetOrder>> accs;
  accs.reserve(groups);
  for (std::size_t g = 0; g < groups; ++g) accs.emplace_back(capacity);

  for (std::size_t id = 0; id < index.num_items(); ++id) {
    const auto item = index.item(id);
    for (std::uint32_t c = 0; c < classes; ++c) {
      ClassItemset s{Antecedent::single(item), c, singles.count(item, c), index.singleton_rank(item, c)};
      accs[config.per_class ? c : 0].push(s);
    }
  }

  std::vector<ClassItemset> fs1;
  for (const auto& acc : accs) {
    auto part = acc.sorted();
    fs1.insert(fs1.end(), part.begin(), part.end());
  }
  auto candidates = generate_pair_candidates(fs1, index);
  result.support.pairs = count_pairs(ds, candidates, config.threads);

  for (auto& cand : candidates) {
    cand.support = result.support.pairs.per_class(cand.antecedent)[cand.label];
    accs[config.per_class ? cand.label : 0].push(cand);
  }

  result.frequent.per_class = config.per_class;
  for (const auto& acc : accs) result.frequent.groups.push_back(acc.sorted());
  result.stats.singleton_entries = singles.entries();
  result.stats.pair_candidates = candidates.size();
  result.stats.pair_antecedents = result.support.pairs.size();
  result.stats.pair_entries = result.support.pairs.entries();
  return result;
}

/// Threshold-based frequent itemsets (Apriori restricted to antecedents of
/// one or two items): pairs are only counted when both constituent
/// 1-itemsets of the same class are frequent.
struct ThresholdItemsets {
  std::vector<ClassItemset> itemsets;  // sorted by ItemsetOrder
  SupportTable support;
};

inline ThresholdItemsets frequent_with_threshold(const Dataset& ds, double minsupp, std::size_t threads = 1) {
  if (!(minsupp > 0.0 && minsupp <= 1.0)) throw Error(ErrorCode::InvalidArgument, "minsupp must be in (0, 1]");
  ThresholdItemsets out;
  out.support.singles = count_singletons(ds, threads);
  const auto& singles = out.support.singles;
  const auto& index = singles.index;
  const double min_count = minsupp * static_cast<double>(ds.rows());
  auto frequent = [&](std::uint64_t support) { return static_cast<double>(support) >= min_count; };

  std::vector<ClassItemset> fs1;
  for (std::size_t id = 0; id < index.num_items(); ++id) {
    const auto item = index.item(id);
    for (std::uint32_t c = 0; c < index.num_classes(); ++c) {
      const auto support = singles.count(item, c);
      if (frequent(support)) fs1.push_back({Antecedent::single(item), c, support, index.singleton_rank(item, c)});
    }
  }
  auto candidates = generate_pair_candidates(fs1, index);
  out.support.pairs = count_pairs(ds, candidates, threads);
  out.itemsets = std::move(fs1);
  for (auto& cand : candidates) {
    cand.support = out.support.pairs.per_class(cand.antecedent)[cand.label];
    if (frequent(cand.support)) out.itemsets.push_back(cand);
  }
  std::sort(out.itemsets.begin(), out.itemsets.end(), ItemsetOrder{});
  return out;
}

}  // namespace araf
