// araf command-line front end: discretize, mine, transform, bench.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "araf/araf.hpp"

namespace {

using araf::Error;
using araf::ErrorCode;
using json = nlohmann::ordered_json;

constexpr const char* kVersion = "araf 0.1.0";

enum Exit : int { kOk = 0, kUsage = 2, kData = 3, kInternal = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::ConflictingFlags:
      return kUsage;
    case ErrorCode::TooLarge:
      return kInternal;
    default:
      return kData;
  }
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open '" + path + "'");
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return hex.str();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::FileNotFound, "cannot write '" + path + "'");
  return out;
}

json read_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::ParseError, "'" + path + "': " + ex.what());
  }
}

/// Manifest written next to the primary output as <output>.manifest.json.
struct Manifest {
  std::string command;
  json parameters = json::object();
  std::optional<std::uint64_t> seed;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;

  void write(const std::string& primary) const {
    json doc;
    doc["tool"] = kVersion;
    doc["command"] = command;
    doc["parameters"] = parameters;
    doc["seed"] = seed ? json(*seed) : json(nullptr);
    json in = json::array();
    for (const auto& p : inputs) in.push_back({{"path", p}, {"sha256", sha256_file(p)}});
    doc["inputs"] = std::move(in);
    doc["outputs"] = outputs;
    auto out = open_out(primary + ".manifest.json");
    out << doc.dump(2) << '\n';
  }
};

std::size_t resolve_threads(std::size_t flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("ARAF_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw UsageError("ARAF_THREADS must be a positive integer");
  }
  return 1;
}

/// Loads `path` treating every non-label column as categorical except the
/// columns named in `continuous`.
araf::Dataset load_for_mining(const std::string& path, const std::string& label,
                              const std::set<std::string, std::less<>>& continuous) {
  const auto records = araf::csv::read(path);
  if (records.empty()) throw Error(ErrorCode::ParseError, "missing header row");
  araf::KindOverrides kinds;
  for (const auto& name : records.front()) {
    if (name == label) continue;
    kinds[name] = continuous.contains(name) ? araf::ColumnKind::Continuous : araf::ColumnKind::Categorical;
  }
  return araf::dataset_from_records(records, label, kinds);
}

std::set<std::string, std::less<>> mapped_columns(const araf::DiscretizationMap& map) {
  std::set<std::string, std::less<>> out;
  for (const auto& e : map.entries) out.insert(e.column);
  return out;
}

// ---------------------------------------------------------------------------

struct DiscretizeArgs {
  std::string input, label, out_map, out_data;
  std::size_t k = 4, l = 10;
  std::vector<std::string> categorical;
};

int cmd_discretize(const DiscretizeArgs& a) {
  araf::KindOverrides kinds;
  for (const auto& c : a.categorical) kinds[c] = araf::ColumnKind::Categorical;
  const auto ds = araf::load_csv(a.input, a.label, kinds);
  const auto [map, out] = araf::discretize_dataset(ds, a.k, a.l);
  {
    auto f = open_out(a.out_map);
    f << araf::io::map_json(map).dump(2) << '\n';
  }
  {
    auto f = open_out(a.out_data);
    araf::write_csv(f, out);
  }
  Manifest m;
  m.command = "discretize";
  m.parameters = {{"label", a.label}, {"k", a.k}, {"l", a.l}, {"categorical", a.categorical}};
  m.inputs = {a.input};
  m.outputs = {a.out_map, a.out_data};
  m.write(a.out_map);
  return kOk;
}

// ---------------------------------------------------------------------------

struct MineArgs {
  std::string input, label, out_rules, out_frequent, map;
  std::optional<std::size_t> d_freq, d_conf, subsample;
  std::optional<std::string> scoring;
  bool per_class = false, reluctant = false, approx_confidence = false;
  std::optional<double> minsupp, minconf;
  std::uint64_t seed = 0;
  double epsilon = 1e-12;
  std::size_t threads = 0;
};

araf::Scoring parse_scoring(const std::string& s) {
  if (s == "conf") return araf::Scoring::Confidence;
  if (s == "rconf") return araf::Scoring::RelativeConfidence;
  if (s == "lift") return araf::Scoring::Lift;
  throw UsageError("unknown scoring '" + s + "'");
}

int cmd_mine(const MineArgs& a) {
  const bool threshold = a.minsupp || a.minconf;
  if (threshold && (a.d_freq || a.d_conf || a.per_class || a.reluctant || a.subsample)) {
    throw Error(ErrorCode::ConflictingFlags,
                "--minsupp/--minconf cannot be combined with --d-freq, --d-conf, --per-class, --reluctant or "
                "--subsample");
  }
  if (threshold && !(a.minsupp && a.minconf)) throw UsageError("threshold mode needs both --minsupp and --minconf");
  if (a.reluctant && a.scoring && *a.scoring != "rconf") {
    throw Error(ErrorCode::ConflictingFlags, "--reluctant implies --scoring rconf");
  }
  const std::size_t threads = resolve_threads(a.threads);

  std::optional<araf::DiscretizationMap> map;
  if (!a.map.empty()) map = araf::io::map_from_json(read_json(a.map));
  araf::Dataset ds = load_for_mining(a.input, a.label, map ? mapped_columns(*map) : std::set<std::string, std::less<>>{});
  if (map) ds = araf::apply_discretization(ds, *map);

  Manifest m;
  m.command = "mine";
  m.inputs = {a.input};
  if (!a.map.empty()) m.inputs.push_back(a.map);
  m.outputs = {a.out_rules};
  if (!a.out_frequent.empty()) m.outputs.push_back(a.out_frequent);

  json mining;
  std::vector<araf::Rule> rules;
  std::optional<araf::SampleInfo> sample;
  std::vector<araf::ClassItemset> frequent;
  const araf::Scoring scoring = a.scoring ? parse_scoring(*a.scoring) : araf::Scoring::Confidence;

  if (threshold) {
    const auto mined = araf::frequent_with_threshold(ds, *a.minsupp, threads);
    rules = araf::generate_rules_threshold(mined.itemsets, mined.support, *a.minconf, a.epsilon);
    std::stable_sort(rules.begin(), rules.end(), araf::RuleOrder{scoring});
    frequent = mined.itemsets;
    mining = {{"mode", "threshold"}, {"minsupp", *a.minsupp}, {"minconf", *a.minconf},
              {"scoring", araf::to_string(scoring)}, {"epsilon", a.epsilon}};
  } else {
    araf::MiningConfig config;
    const auto suggested = araf::suggest_params(ds.num_features(), std::max<std::size_t>(ds.num_classes(), 2));
    config.d_freq = a.d_freq.value_or(suggested.d_freq);
    config.d_conf = a.d_conf.value_or(std::min(suggested.d_conf, config.d_freq));
    config.reluctant = a.reluctant;
    config.per_class = a.per_class || a.reluctant;
    config.scoring = a.reluctant ? araf::Scoring::RelativeConfidence : scoring;
    config.epsilon = a.epsilon;
    config.subsample = a.subsample;
    config.seed = a.seed;
    config.exact_confidence = !a.approx_confidence;
    config.threads = threads;
    const auto result = araf::run_pipeline(ds, config);
    rules = result.rules;
    sample = result.sample;
    frequent = result.mining.frequent.flatten();
    mining = araf::io::config_json(config);
    mining["mode"] = "fixed";
    mining["d_freq_suggested"] = !a.d_freq;
    mining["d_conf_suggested"] = !a.d_conf;
    if (a.subsample) m.seed = a.seed;
  }

  {
    auto f = open_out(a.out_rules);
    f << araf::io::rules_document(ds, rules, mining, sample, map ? &*map : nullptr).dump(2) << '\n';
  }
  if (!a.out_frequent.empty()) {
    auto f = open_out(a.out_frequent);
    araf::io::write_itemset_lines(f, ds, frequent);
  }
  m.parameters = mining;
  m.parameters["label"] = a.label;
  m.parameters["threads"] = threads;
  if (sample) m.parameters["sample"] = araf::io::sample_json(*sample);
  m.write(a.out_rules);
  return kOk;
}

// ---------------------------------------------------------------------------

struct TransformArgs {
  std::string input, rules, mode = "label", out, label, map;
};

int cmd_transform(const TransformArgs& a) {
  araf::TransformMode mode;
  if (a.mode == "label") {
    mode = araf::TransformMode::AppendToLabelEncoded;
  } else if (a.mode == "onehot") {
    mode = araf::TransformMode::AppendInteractionsToOneHot;
  } else {
    throw UsageError("unknown mode '" + a.mode + "'");
  }
  const json doc = read_json(a.rules);
  auto parsed = araf::io::rules_from_json(doc);
  if (!a.map.empty()) parsed.discretization = araf::io::map_from_json(read_json(a.map));
  std::string label = a.label;
  if (label.empty()) {
    if (!doc.contains("label") || !doc.at("label").is_string()) throw UsageError("--label needed: rules file has none");
    label = doc.at("label").get<std::string>();
  }

  const auto continuous =
      parsed.discretization ? mapped_columns(*parsed.discretization) : std::set<std::string, std::less<>>{};
  araf::Dataset ds = load_for_mining(a.input, label, continuous);
  if (parsed.discretization) ds = araf::apply_discretization(ds, *parsed.discretization);
  auto [resolved_ds, antecedents] = araf::io::resolve(std::move(ds), parsed.antecedents);

  araf::FeatureSpec spec;
  spec.mode = mode;
  for (const auto& ant : antecedents) {
    if (std::find(spec.features.begin(), spec.features.end(), ant) == spec.features.end()) spec.features.push_back(ant);
  }
  const auto matrix = araf::transform(resolved_ds, spec);
  {
    auto f = open_out(a.out);
    araf::write_feature_csv(f, matrix, resolved_ds);
  }
  Manifest m;
  m.command = "transform";
  m.parameters = {{"mode", a.mode}, {"label", label}, {"features", spec.appended().size()}};
  m.inputs = {a.input, a.rules};
  if (!a.map.empty()) m.inputs.push_back(a.map);
  m.outputs = {a.out};
  m.write(a.out);
  return kOk;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
  std::string variant, out, out_recovery;
  std::size_t trials = 100, n = 0, p = 0, d_freq = 0, d_conf = 5, threads = 0;
  std::uint64_t seed = 0;
  double noise = 0.05, l2 = araf::bench::LogRegOptions{}.l2_penalty, train_fraction = 0.7;
  std::vector<std::size_t> n_primes{100, 500, 1000, 5000};
};

std::string default_recovery_path(const std::string& out) {
  const auto dot = out.rfind('.');
  const auto slash = out.find_last_of("/\\");
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  return (has_ext ? out.substr(0, dot) : out) + ".recovery.csv";
}

int bench_rules(const BenchArgs& a, araf::bench::Variant variant, std::size_t threads) {
  using namespace araf::bench;
  TrialOptions opt;
  opt.n = a.n ? a.n : 1000;
  opt.p = a.p ? a.p : 99;
  opt.noise_rate = a.noise;
  opt.d_freq = a.d_freq ? a.d_freq : 45;
  opt.d_conf = a.d_conf;
  opt.train_fraction = a.train_fraction;
  opt.logreg.l2_penalty = a.l2;

  std::vector<TrialOutcome> outcomes(a.trials);
  araf::for_each_chunk(a.trials, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) outcomes[t] = run_trial(variant, a.seed + t, opt);
  });

  auto out = open_out(a.out);
  araf::csv::write_row(out, {"variant", "method", "seed", "logloss", "accuracy"});
  std::map<std::string, std::map<std::string, std::size_t>> counts;  // rule -> method -> trials
  for (const auto& o : outcomes) {
    for (const auto& mo : o.methods) {
      araf::csv::write_row(out, {std::string(to_string(variant)), std::string(to_string(mo.method)),
                                 std::to_string(o.seed), araf::format_real(mo.eval.logloss),
                                 araf::format_real(mo.eval.accuracy)});
      for (const auto& r : mo.rules) ++counts[r][std::string(to_string(mo.method))];
    }
  }

  // Ground-truth rows first, then every other rule seen, by name.
  auto rec = open_out(a.out_recovery);
  araf::csv::write_row(rec, {"rule", "ground_truth", "alg4", "alg5", "alg6"});
  std::vector<std::string> order = ground_truth_rules();
  for (const auto& [rule, _] : counts) {
    if (std::find(order.begin(), order.end(), rule) == order.end()) order.push_back(rule);
  }
  const auto truth = ground_truth_rules();
  for (const auto& rule : order) {
    const bool gt = std::find(truth.begin(), truth.end(), rule) != truth.end();
    araf::csv::Row row{rule, gt ? "1" : "0"};
    for (const char* m : {"alg4", "alg5", "alg6"}) {
      auto it = counts.find(rule);
      const std::size_t c = it == counts.end() || !it->second.contains(m) ? 0 : it->second.at(m);
      row.push_back(std::to_string(c));
    }
    araf::csv::write_row(rec, row);
  }
  return kOk;
}

int bench_freq(const BenchArgs& a, std::size_t threads) {
  using namespace araf::bench;
  FreqTrialOptions opt;
  opt.n = a.n ? a.n : 10000;
  opt.p = a.p ? a.p : 10;
  opt.d_freq = a.d_freq ? a.d_freq : 5;

  std::vector<std::vector<FreqTrialOutcome>> outcomes(a.n_primes.size(), std::vector<FreqTrialOutcome>(a.trials));
  araf::for_each_chunk(a.trials, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      for (std::size_t i = 0; i < a.n_primes.size(); ++i) outcomes[i][t] = run_freq_trial(a.n_primes[i], a.seed + t, opt);
    }
  });

  auto out = open_out(a.out);
  araf::csv::write_row(out, {"variant", "n_prime", "seed", "recovered", "mean_abs_error"});
  for (const auto& per : outcomes) {
    for (const auto& o : per) {
      araf::csv::write_row(out, {"freq", std::to_string(o.n_prime), std::to_string(o.seed),
                                 std::to_string(std::count(o.recovered.begin(), o.recovered.end(), true)),
                                 araf::format_real(o.mean_abs_error)});
    }
  }

  const auto truth = freq_bench_truth();
  auto rec = open_out(a.out_recovery);
  araf::csv::Row header{"itemset", "frequency"};
  for (auto np : a.n_primes) header.push_back("n_prime=" + std::to_string(np));
  araf::csv::write_row(rec, header);
  for (std::size_t k = 0; k < truth.size(); ++k) {
    std::string name = "(";
    for (std::size_t i = 0; i < truth[k].first.antecedent.size(); ++i) {
      const auto item = truth[k].first.antecedent[i];
      name += (i ? ",X" : "X") + std::to_string(item.feature + 1) + "=" + std::to_string(item.category);
    }
    araf::csv::Row row{name + ")", araf::format_real(truth[k].second)};
    for (const auto& per : outcomes) {
      row.push_back(std::to_string(
          std::count_if(per.begin(), per.end(), [&](const FreqTrialOutcome& o) { return o.recovered[k]; })));
    }
    araf::csv::write_row(rec, row);
  }
  return kOk;
}

int cmd_bench(BenchArgs a) {
  araf::bench::Variant variant;
  if (a.variant == "freq") {
    variant = araf::bench::Variant::FreqBench;
  } else if (a.variant == "s1") {
    variant = araf::bench::Variant::S1;
  } else if (a.variant == "s2") {
    variant = araf::bench::Variant::S2;
  } else {
    throw UsageError("unknown variant '" + a.variant + "'");
  }
  if (a.trials == 0) throw UsageError("--trials must be at least 1");
  if (a.out_recovery.empty()) a.out_recovery = default_recovery_path(a.out);
  const std::size_t threads = resolve_threads(a.threads);

  const int rc = variant == araf::bench::Variant::FreqBench ? bench_freq(a, threads) : bench_rules(a, variant, threads);
  Manifest m;
  m.command = "bench";
  m.seed = a.seed;
  m.parameters = {{"variant", a.variant}, {"trials", a.trials},        {"n", a.n},
                  {"p", a.p},             {"d_freq", a.d_freq},         {"d_conf", a.d_conf},
                  {"noise", a.noise},     {"l2", a.l2},                 {"train_fraction", a.train_fraction},
                  {"n_primes", a.n_primes}, {"rng", std::string(araf::Rng::algorithm)}};
  m.outputs = {a.out, a.out_recovery};
  m.write(a.out);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Association-rule feature mining and transformation"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  DiscretizeArgs da;
  auto* disc = app.add_subcommand("discretize", "Fit entropy-based bins for continuous columns");
  disc->add_option("--input", da.input, "Input CSV")->required()->check(CLI::ExistingFile);
  disc->add_option("--label", da.label, "Label column")->required();
  disc->add_option("--k", da.k, "Intervals per column")->capture_default_str();
  disc->add_option("--l", da.l, "Quantile candidates per round")->capture_default_str();
  disc->add_option("--out-map", da.out_map, "Output JSON map")->required();
  disc->add_option("--out-data", da.out_data, "Output discretized CSV")->required();
  disc->add_option("--categorical", da.categorical, "Treat these numeric columns as categorical")->delimiter(',');

  MineArgs ma;
  std::size_t d_freq = 0, d_conf = 0, sub = 0;
  std::string scoring;
  double minsupp = 0, minconf = 0;
  auto* mine = app.add_subcommand("mine", "Mine class association rules");
  mine->add_option("--input", ma.input, "Input CSV")->required()->check(CLI::ExistingFile);
  mine->add_option("--label", ma.label, "Label column")->required();
  auto* o_dfreq = mine->add_option("--d-freq", d_freq, "Frequent itemset capacity")->check(CLI::PositiveNumber);
  auto* o_dconf = mine->add_option("--d-conf", d_conf, "Number of rules kept")->check(CLI::PositiveNumber);
  auto* o_scoring = mine->add_option("--scoring", scoring, "conf, rconf or lift")
                        ->check(CLI::IsMember({"conf", "rconf", "lift"}));
  mine->add_flag("--per-class", ma.per_class, "Per-class capacities");
  mine->add_flag("--reluctant", ma.reluctant, "Reluctant selection (implies --per-class --scoring rconf)");
  auto* o_minsupp = mine->add_option("--minsupp", minsupp, "Support threshold (threshold mode)");
  auto* o_minconf = mine->add_option("--minconf", minconf, "Confidence threshold (threshold mode)");
  auto* o_sub = mine->add_option("--subsample", sub, "Mine on n' rows drawn with replacement")->check(CLI::PositiveNumber);
  mine->add_option("--seed", ma.seed, "Subsampling seed")->capture_default_str();
  mine->add_flag("--approx-confidence", ma.approx_confidence, "Score rules on the subsample instead of the full data");
  mine->add_option("--epsilon", ma.epsilon, "rconf smoothing constant")->capture_default_str();
  mine->add_option("--map", ma.map, "Discretization map applied before mining")->check(CLI::ExistingFile);
  mine->add_option("--out-rules", ma.out_rules, "Output rules JSON")->required();
  mine->add_option("--out-frequent", ma.out_frequent, "Output frequent itemsets (JSON lines)");
  mine->add_option("--threads", ma.threads, "Worker threads (default: ARAF_THREADS or 1)");

  TransformArgs ta;
  auto* trans = app.add_subcommand("transform", "Append rule features to a dataset");
  trans->add_option("--input", ta.input, "Input CSV")->required()->check(CLI::ExistingFile);
  trans->add_option("--rules", ta.rules, "Rules JSON from mine")->required()->check(CLI::ExistingFile);
  trans->add_option("--mode", ta.mode, "label or onehot")->check(CLI::IsMember({"label", "onehot"}))->capture_default_str();
  trans->add_option("--out", ta.out, "Output CSV")->required();
  trans->add_option("--label", ta.label, "Label column (default: from the rules file)");
  trans->add_option("--map", ta.map, "Discretization map (default: from the rules file)")->check(CLI::ExistingFile);

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Synthetic benchmark trials");
  bench->add_option("--variant", ba.variant, "freq, s1 or s2")->required()->check(CLI::IsMember({"freq", "s1", "s2"}));
  bench->add_option("--trials", ba.trials, "Number of seeded trials")->capture_default_str();
  bench->add_option("--seed", ba.seed, "First trial seed")->capture_default_str();
  bench->add_option("--out", ba.out, "Results CSV")->required();
  bench->add_option("--out-recovery", ba.out_recovery, "Recovery-count CSV (default: <out>.recovery.csv)");
  bench->add_option("--n", ba.n, "Rows per dataset (default 1000, freq: 10000)");
  bench->add_option("--p", ba.p, "Features (default 99, freq: 10)");
  bench->add_option("--d-freq", ba.d_freq, "Frequent itemset capacity (default 45, freq: 5)");
  bench->add_option("--d-conf", ba.d_conf, "Rules kept")->capture_default_str();
  bench->add_option("--noise", ba.noise, "Label noise rate")->capture_default_str();
  bench->add_option("--l2", ba.l2, "Logistic regression L2 penalty")->capture_default_str();
  bench->add_option("--train-fraction", ba.train_fraction, "Stratified train share")->capture_default_str();
  bench->add_option("--n-prime", ba.n_primes, "Subsample sizes (freq variant)");
  bench->add_option("--threads", ba.threads, "Worker threads (default: ARAF_THREADS or 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*disc) return cmd_discretize(da);
    if (*mine) {
      if (*o_dfreq) ma.d_freq = d_freq;
      if (*o_dconf) ma.d_conf = d_conf;
      if (*o_scoring) ma.scoring = scoring;
      if (*o_minsupp) ma.minsupp = minsupp;
      if (*o_minconf) ma.minconf = minconf;
      if (*o_sub) ma.subsample = sub;
      return cmd_mine(ma);
    }
    if (*trans) return cmd_transform(ta);
    if (*bench) return cmd_bench(ba);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
