#include <catch_amalgamated.hpp>

#include <sstream>

#include "araf/bench.hpp"
#include "araf/io.hpp"

using namespace araf;
using io::json;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected araf::Error");
  return ErrorCode::InvalidArgument;
}

Dataset s1_small() { return bench::generate({400, 6, bench::Variant::S1, 0.05, 2}); }

}  // namespace

TEST_CASE("rule document: field order and values") {
  const auto ds = s1_small();
  const auto config = bench::method_config(bench::Method::Alg5, 30, 4);
  const auto rules = run_pipeline(ds, config).rules;
  const auto doc = io::rules_document(ds, rules, io::config_json(config), std::nullopt, nullptr);

  std::vector<std::string> keys;
  for (const auto& [k, v] : doc.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"label", "mining", "sample", "discretization", "rules"});
  CHECK(doc["label"] == "Y");
  CHECK(doc["sample"].is_null());
  REQUIRE(doc["rules"].size() == rules.size());
  const auto& first = doc["rules"][0];
  keys.clear();
  for (const auto& [k, v] : first.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"antecedent", "class", "support", "confidence", "rconf", "lift"});
  CHECK(first["support"] == rules[0].support);
  CHECK(first["confidence"].get<double>() == rules[0].confidence);
  CHECK(doc["mining"]["scoring"] == "rconf");
}

TEST_CASE("rule document: names survive a round trip through resolve") {
  const auto ds = s1_small();
  const auto rules = run_pipeline(ds, bench::method_config(bench::Method::Alg6, 30, 5)).rules;
  const auto text = io::rules_document(ds, rules, json::object(), std::nullopt, nullptr).dump();
  const auto file = io::rules_from_json(json::parse(text));
  REQUIRE(file.antecedents.size() == rules.size());
  CHECK_FALSE(file.discretization);
  const auto [resolved_ds, antecedents] = io::resolve(ds, file.antecedents);
  for (std::size_t i = 0; i < rules.size(); ++i) CHECK(antecedents[i] == rules[i].antecedent);
  CHECK(resolved_ds.feature(0).categories == ds.feature(0).categories);
}

TEST_CASE("resolve: unknown column, continuous column, unseen category") {
  std::vector<FeatureColumn> cols{{"a", ColumnKind::Categorical, {"x", "y"}, {0, 1}, {}},
                                  {"v", ColumnKind::Continuous, {}, {}, {0.5, 1.5}}};
  const Dataset ds(std::move(cols), "Y", {"0", "1"}, {0, 1});
  const std::vector<io::NamedAntecedent> unknown{{{"zzz", "x"}}};
  CHECK(code_of([&] { io::resolve(ds, unknown); }) == ErrorCode::SchemaMismatch);
  const std::vector<io::NamedAntecedent> cont{{{"v", "1"}}};
  CHECK(code_of([&] { io::resolve(ds, cont); }) == ErrorCode::SchemaMismatch);
  const std::vector<io::NamedAntecedent> same{{{"a", "x"}, {"a", "y"}}};
  CHECK(code_of([&] { io::resolve(ds, same); }) == ErrorCode::ParseError);

  const std::vector<io::NamedAntecedent> fresh{{{"a", "new"}}};
  const auto [out, ants] = io::resolve(ds, fresh);
  CHECK(out.feature(0).categories == std::vector<std::string>{"x", "y", "new"});
  CHECK(ants[0] == Antecedent::single({0, 2}));
  CHECK_FALSE(ants[0].matches(out, 0));
  CHECK_FALSE(ants[0].matches(out, 1));
}

TEST_CASE("discretization map JSON round trip and validation") {
  DiscretizationMap map;
  map.entries.push_back({"x", {0.1, 2.5, 7.25}, false});
  map.entries.push_back({"z", {}, true});
  const auto j = io::map_json(map);
  CHECK(j[0]["k"] == 4);
  const auto back = io::map_from_json(json::parse(j.dump()));
  REQUIRE(back.entries.size() == 2);
  CHECK(back.entries[0].thresholds == map.entries[0].thresholds);
  CHECK(back.entries[1].thresholds.empty());

  CHECK(code_of([] { io::map_from_json(json::parse(R"([{"column":"x","thresholds":[2,1]}])")); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { io::map_from_json(json::parse(R"([{"column":"x","k":3,"thresholds":[1]}])")); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { io::map_from_json(json::parse(R"({"column":"x"})")); }) == ErrorCode::ParseError);
  CHECK(code_of([] { io::rules_from_json(json::parse(R"({"rules":[{"antecedent":[]}]})")); }) ==
        ErrorCode::ParseError);
}

TEST_CASE("feature spec JSON round trip") {
  const auto ds = s1_small();
  FeatureSpec spec;
  spec.mode = TransformMode::AppendInteractionsToOneHot;
  spec.features = {Antecedent::single({0, 1}), Antecedent::pair({0, 1}, {2, 0})};
  const auto j = io::spec_json(ds, spec);
  CHECK(j["mode"] == "onehot");
  const auto [ds2, back] = io::spec_from_json(ds, json::parse(j.dump()));
  CHECK(back.mode == spec.mode);
  CHECK(back.features == spec.features);
  CHECK(io::mode_from_string("label") == TransformMode::AppendToLabelEncoded);
  CHECK(code_of([] { io::mode_from_string("other"); }) == ErrorCode::ParseError);
}

TEST_CASE("itemset lines: one object per line, stable order") {
  const auto ds = s1_small();
  MiningConfig config;
  config.d_freq = 6;
  const auto frequent = mine_frequent(ds, config).frequent.flatten();
  std::ostringstream out;
  io::write_itemset_lines(out, ds, frequent);
  std::istringstream in(out.str());
  std::string line;
  std::size_t i = 0;
  while (std::getline(in, line)) {
    const auto j = json::parse(line);
    CHECK(j["support"] == frequent[i].support);
    CHECK(j["rank"] == frequent[i].rank);
    ++i;
  }
  CHECK(i == frequent.size());
}
