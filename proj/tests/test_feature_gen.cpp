#include <catch_amalgamated.hpp>

#include <sstream>

#include "araf/bench.hpp"
#include "araf/csv.hpp"
#include "araf/feature_gen.hpp"
#include "araf/rules.hpp"
#include "support.hpp"

using namespace araf;

namespace {

Rule rule_for(const Antecedent& a, std::uint32_t label) {
  Rule r;
  r.antecedent = a;
  r.label = label;
  return r;
}

Dataset two_binary() {
  std::vector<FeatureColumn> cols{{"X1", ColumnKind::Categorical, {"0", "1"}, {1, 1, 0}, {}},
                                  {"X2", ColumnKind::Categorical, {"0", "1"}, {0, 1, 0}, {}}};
  return Dataset(std::move(cols), "Y", {"0", "1"}, {0, 1, 0});
}

}  // namespace

TEST_CASE("generate_features collapses rules that share an antecedent") {
  const auto x2 = Antecedent::single({1, 1});
  const std::vector<Rule> rules{rule_for(x2, 0), rule_for(x2, 1)};
  const auto spec = generate_features(rules);
  REQUIRE(spec.features.size() == 1);
  CHECK(spec.features[0] == x2);
  CHECK(feature_name(two_binary(), spec.features[0]) == "X2=1");
  CHECK(generate_features(std::vector<Rule>{}).features.empty());
}

TEST_CASE("generate_features keeps rule order") {
  std::vector<Rule> rules;
  for (std::uint32_t f = 5; f > 0; --f) rules.push_back(rule_for(Antecedent::single({f, 0}), 0));
  const auto spec = generate_features(rules);
  REQUIRE(spec.features.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(spec.features[i] == rules[i].antecedent);
}

TEST_CASE("transform: pair indicator and names") {
  const auto ds = two_binary();
  FeatureSpec spec;
  spec.features = {Antecedent::pair({0, 1}, {1, 0})};
  const auto m = transform(ds, spec);
  CHECK(m.names == std::vector<std::string>{"X1", "X2", "X1=1&X2=0"});
  CHECK(m.at(0, 2) == 1.0);  // X1=1, X2=0
  CHECK(m.at(1, 2) == 0.0);  // X1=1, X2=1
  CHECK(m.at(2, 2) == 0.0);
}

TEST_CASE("transform: empty spec in label mode is the identity") {
  const auto ds = two_binary();
  const auto m = transform(ds, FeatureSpec{});
  REQUIRE(m.cols == 2);
  for (std::size_t r = 0; r < ds.rows(); ++r) {
    for (std::size_t f = 0; f < 2; ++f) CHECK(m.at(r, f) == ds.feature(f).codes[r]);
  }
}

TEST_CASE("transform: one-hot mode appends only interactions") {
  const auto ds = two_binary();
  FeatureSpec spec;
  spec.mode = TransformMode::AppendInteractionsToOneHot;
  spec.features = {Antecedent::single({0, 1}), Antecedent::pair({0, 1}, {1, 1})};
  const auto m = transform(ds, spec);
  CHECK(m.names == std::vector<std::string>{"X1=0", "X1=1", "X2=0", "X2=1", "X1=1&X2=1"});
  CHECK(m.at(1, 4) == 1.0);
}

TEST_CASE("transform: schema mismatch and continuous input in one-hot mode") {
  const auto ds = two_binary();
  FeatureSpec spec;
  spec.features = {Antecedent::single({7, 0})};
  CHECK_THROWS_AS(transform(ds, spec), Error);
  std::vector<FeatureColumn> cols{{"x", ColumnKind::Continuous, {}, {}, {0.5, 1.5}}};
  const Dataset cont(std::move(cols), "Y", {"0", "1"}, {0, 1});
  FeatureSpec onehot;
  onehot.mode = TransformMode::AppendInteractionsToOneHot;
  CHECK_THROWS_AS(transform(cont, onehot), Error);
  CHECK(transform(cont, FeatureSpec{}).cols == 1);
}

TEST_CASE("S1 reluctant spec in label mode yields 99 base columns plus at most 5") {
  const auto ds = bench::generate({1000, 99, bench::Variant::S1, 0.05, 3});
  const auto rules = run_pipeline(ds, bench::method_config(bench::Method::Alg6, 45, 5)).rules;
  const auto spec = generate_features(rules);
  const auto m = transform(ds, spec);
  CHECK(m.cols >= 99);
  CHECK(m.cols <= 104);
  CHECK(m.cols == 99 + spec.features.size());
}

TEST_CASE("property: indicator consistency, width and idempotence") {
  Rng rng(61);
  for (int t = 0; t < 40; ++t) {
    const std::size_t classes = 2 + rng.uniform_index(2);
    const auto ds = testing::random_dataset(rng, 20 + rng.uniform_index(100), 2 + rng.uniform_index(6), 4, classes);
    auto config = testing::random_config(rng, classes);
    const auto rules = run_pipeline(ds, config).rules;
    for (auto mode : {TransformMode::AppendToLabelEncoded, TransformMode::AppendInteractionsToOneHot}) {
      const auto spec = generate_features(rules, mode);
      auto doubled = rules;
      doubled.insert(doubled.end(), rules.begin(), rules.end());
      CHECK(generate_features(doubled, mode).features == spec.features);

      const auto m = transform(ds, spec);
      const auto hot = one_hot(ds);
      const std::size_t base = mode == TransformMode::AppendToLabelEncoded ? ds.num_features() : hot.cols;
      const auto appended = spec.appended();
      REQUIRE(m.cols == base + appended.size());

      // Column offset of each item in the one-hot expansion.
      std::vector<std::size_t> offset{0};
      for (const auto& fc : ds.features()) offset.push_back(offset.back() + fc.categories.size());
      for (std::size_t r = 0; r < ds.rows(); ++r) {
        for (std::size_t k = 0; k < appended.size(); ++k) {
          int product = 1;
          for (const auto& item : appended[k].items()) product *= hot.at(r, offset[item.feature] + item.category);
          CHECK(m.at(r, base + k) == product);
        }
      }
    }
  }
}

TEST_CASE("write_feature_csv writes header, values and label last") {
  const auto ds = two_binary();
  FeatureSpec spec;
  spec.features = {Antecedent::pair({0, 1}, {1, 0})};
  std::ostringstream out;
  write_feature_csv(out, transform(ds, spec), ds);
  const auto rows = csv::parse(out.str());
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == csv::Row{"X1", "X2", "X1=1&X2=0", "Y"});
  CHECK(rows[1] == csv::Row{"1", "0", "1", "0"});
}

TEST_CASE("suggest_params examples") {
  CHECK(suggest_params(100, 3) == SuggestedParams{150, 50});
  CHECK(suggest_params(1, 2) == SuggestedParams{10, 5});
  CHECK(suggest_params(99, 3) == SuggestedParams{135, 45});
  CHECK_THROWS_AS(suggest_params(0, 3), Error);
  CHECK_THROWS_AS(suggest_params(4, 1), Error);
}

TEST_CASE("property: suggested ratio d_freq / d_conf equals |C|") {
  for (std::size_t p = 1; p < 2000; p += 37) {
    for (std::size_t c = 2; c < 6; ++c) {
      const auto s = suggest_params(p, c);
      CHECK(s.d_freq == c * s.d_conf);
      const auto root = s.d_conf / 5;
      CHECK(root * root <= p);
      CHECK((root + 1) * (root + 1) > p);
    }
  }
}
