#include <catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "araf/bench.hpp"
#include "araf/csv.hpp"
#include "araf/io.hpp"

using namespace araf;
using io::json;
namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("araf_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

int run(const std::string& args) {
  const std::string cmd = std::string(ARAF_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& p) { return json::parse(slurp(p)); }

std::string write_dataset(const std::string& name, const Dataset& ds) {
  const auto p = path(name);
  std::ofstream out(p, std::ios::binary);
  write_csv(out, ds);
  return p;
}

std::string s1_csv(std::size_t p = 99) {
  return write_dataset("s1_" + std::to_string(p) + ".csv", bench::generate({600, p, bench::Variant::S1, 0.05, 1}));
}

}  // namespace

TEST_CASE("cli: usage errors exit with 2") {
  const auto data = s1_csv();
  CHECK(run("") == 2);
  CHECK(run("mine --input " + data + " --out-rules " + path("x.json")) == 2);  // missing --label
  CHECK(run("mine --input " + data + " --label Y --minsupp 0.1 --minconf 0.5 --d-freq 50 --out-rules " +
            path("x.json")) == 2);
  CHECK(run("mine --input " + data + " --label Y --reluctant --scoring conf --out-rules " + path("x.json")) == 2);
  CHECK(run("bench --variant s3 --out " + path("b.csv")) == 2);
  CHECK(run("discretize --input " + data + " --out-map " + path("m.json") + " --out-data " + path("d.csv")) == 2);
  CHECK(run("--help") == 0);
}

TEST_CASE("cli: data errors exit with 3") {
  CHECK(run("mine --input " + s1_csv() + " --label nope --out-rules " + path("x.json")) == 3);
  const auto rules = path("rules_unknown.json");
  REQUIRE(run("mine --input " + s1_csv() + " --label Y --d-freq 45 --d-conf 5 --reluctant --out-rules " + rules) == 0);
  auto doc = read_json(rules);
  doc["rules"][0]["antecedent"][0]["feature"] = "missing_column";
  std::ofstream(path("bad_rules.json")) << doc.dump();
  CHECK(run("transform --input " + s1_csv() + " --rules " + path("bad_rules.json") + " --out " + path("t.csv")) == 3);
  CHECK(run("mine --input " + path("does_not_exist.csv") + " --label Y --out-rules " + path("x.json")) == 2);
}

TEST_CASE("cli: mine defaults follow the suggested parameters and land in the manifest") {
  const auto data = write_dataset("p100.csv", bench::generate({300, 100, bench::Variant::S1, 0.05, 3}));
  const auto out = path("p100_rules.json");
  REQUIRE(run("mine --input " + data + " --label Y --out-rules " + out) == 0);
  const auto manifest = read_json(out + ".manifest.json");
  CHECK(manifest["command"] == "mine");
  CHECK(manifest["parameters"]["d_freq"] == 150);
  CHECK(manifest["parameters"]["d_conf"] == 50);
  CHECK(manifest["inputs"][0]["sha256"].get<std::string>().size() == 64);
  CHECK(read_json(out)["rules"].size() <= 50);
}

TEST_CASE("cli: reluctant implies per-class rconf; reruns are byte-identical") {
  const auto data = s1_csv();
  const auto a = path("rel_a.json"), b = path("rel_b.json");
  const std::string args = " --label Y --d-freq 45 --d-conf 5 --reluctant --subsample 400 --seed 9 --out-rules ";
  REQUIRE(run("mine --input " + data + args + a + " --threads 2") == 0);
  REQUIRE(run("mine --input " + data + args + b + " --threads 1") == 0);
  CHECK(slurp(a) == slurp(b));
  const auto doc = read_json(a);
  CHECK(doc["mining"]["per_class"] == true);
  CHECK(doc["mining"]["scoring"] == "rconf");
  CHECK(doc["sample"]["n_prime"] == 400);
  CHECK(doc["sample"]["seed"] == 9);
  CHECK(read_json(a + ".manifest.json")["seed"] == 9);
}

TEST_CASE("cli: threshold mode") {
  const auto out = path("thr.json");
  REQUIRE(run("mine --input " + s1_csv(8) + " --label Y --minsupp 0.05 --minconf 0.9 --out-rules " + out) == 0);
  const auto doc = read_json(out);
  CHECK(doc["mining"]["mode"] == "threshold");
  for (const auto& r : doc["rules"]) CHECK(r["confidence"].get<double>() >= 0.9);
}

TEST_CASE("cli: transform widths in label and one-hot modes") {
  const auto data = s1_csv();
  const auto rules = path("t_rules.json");
  REQUIRE(run("mine --input " + data + " --label Y --d-freq 45 --d-conf 5 --reluctant --out-rules " + rules) == 0);
  const auto doc = read_json(rules);
  std::set<std::string> distinct;
  std::size_t pairs = 0;
  for (const auto& r : doc["rules"]) {
    if (distinct.insert(r["antecedent"].dump()).second && r["antecedent"].size() == 2) ++pairs;
  }

  REQUIRE(run("transform --input " + data + " --rules " + rules + " --mode label --out " + path("tl.csv")) == 0);
  const auto label_rows = csv::read(path("tl.csv"));
  CHECK(label_rows[0].size() == 99 + distinct.size() + 1);
  CHECK(label_rows[0].size() <= 99 + 5 + 1);
  CHECK(label_rows[0].back() == "Y");
  CHECK(label_rows.size() == 601);

  REQUIRE(run("transform --input " + data + " --rules " + rules + " --mode onehot --out " + path("to.csv")) == 0);
  const auto hot_rows = csv::read(path("to.csv"));
  CHECK(hot_rows[0].size() == 2 * 99 + pairs + 1);
  CHECK(fs::exists(path("to.csv") + ".manifest.json"));
}

TEST_CASE("cli: discretize") {
  SECTION("continuous columns get at most k categories") {
    std::ostringstream text;
    text << "a,b,label\n";
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
      const double a = rng.uniform01() * 10, b = rng.uniform01();
      text << format_real(a) << ',' << format_real(b) << ',' << (a > 5 ? "hi" : "lo") << '\n';
    }
    std::ofstream(path("cont.csv")) << text.str();
    REQUIRE(run("discretize --input " + path("cont.csv") + " --label label --k 4 --out-map " + path("cm.json") +
                " --out-data " + path("cd.csv")) == 0);
    const auto map = read_json(path("cm.json"));
    CHECK(map.size() == 2);
    const auto ds = load_csv(path("cd.csv"), "label", {{"a", ColumnKind::Categorical}, {"b", ColumnKind::Categorical}});
    for (const auto& fc : ds.features()) CHECK(fc.categories.size() <= 4);

    // The map feeds mine and transform.
    REQUIRE(run("mine --input " + path("cont.csv") + " --label label --map " + path("cm.json") +
                " --d-freq 10 --d-conf 3 --out-rules " + path("cr.json")) == 0);
    CHECK(read_json(path("cr.json"))["discretization"].size() == 2);
    REQUIRE(run("transform --input " + path("cont.csv") + " --rules " + path("cr.json") + " --out " +
                path("ct.csv")) == 0);
  }
  SECTION("no continuous columns: identity copy and empty map") {
    const auto data = write_dataset("cat.csv", bench::generate({50, 4, bench::Variant::S1, 0.05, 6}));
    REQUIRE(run("discretize --input " + data + " --label Y --categorical X1,X2,X3,X4 --out-map " + path("em.json") +
                " --out-data " + path("ed.csv")) == 0);
    CHECK(read_json(path("em.json")).empty());
    CHECK(slurp(path("ed.csv")) == slurp(data));
  }
}

TEST_CASE("cli: bench with one trial") {
  const auto out = path("bench.csv");
  REQUIRE(run("bench --variant s1 --trials 1 --seed 3 --out " + out) == 0);
  const auto rows = csv::read(out);
  REQUIRE(rows.size() == 1 + 4);  // header plus one row per method
  CHECK(rows[0] == csv::Row{"variant", "method", "seed", "logloss", "accuracy"});
  const auto recovery = csv::read(path("bench.recovery.csv"));
  REQUIRE(recovery.size() >= 1 + 5);
  const auto truth = bench::ground_truth_rules();
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(recovery[i + 1][0] == truth[i]);
    CHECK(recovery[i + 1][1] == "1");
  }
  for (std::size_t i = 6; i < recovery.size(); ++i) CHECK(recovery[i][1] == "0");

  REQUIRE(run("bench --variant freq --trials 2 --n-prime 100 500 --out " + path("freq.csv")) == 0);
  CHECK(csv::read(path("freq.csv")).size() == 1 + 4);
}
