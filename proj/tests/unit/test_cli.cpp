#include <catch2/catch_amalgamated.hpp>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "qsearch/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qsearch::cli;

namespace {

const fs::path kScenarios{QSEARCH_SCENARIO_DIR};

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("qsearch_cli_" + name);
  fs::remove_all(p);
  return p;
}

int invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "qsearch");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

}  // namespace

TEST_CASE("simulate on the library demo", "[cli]") {
  const auto out = scratch("simulate");
  REQUIRE(invoke({"simulate", "--scenario", (kScenarios / "library_demo.json").string(), "--out", out.string()}) == 0);
  CHECK(fs::exists(out / "trajectory.csv"));
  CHECK(slurp(out / "trajectory.csv").rfind("t,re_a,im_a,re_b,im_b,success_prob\n", 0) == 0);
  const json doc = read_json(out / "simulate.json");
  CHECK(doc.at("schema_version") == 1);
  CHECK(doc.at("success_distribution").at("failure_mass").get<double>() <= 1e-12);
  const auto p = doc.at("success_distribution").at("probability");
  // the title sitting in all three sets is the likelier outcome
  CHECK(p.at(5).get<double>() > p.at(3).get<double>());
  CHECK(doc.at("measurements").at("oracle_hits") == doc.at("measurements").at("shots"));
}

TEST_CASE("count example recovers three targets", "[cli]") {
  const auto out = scratch("count");
  REQUIRE(invoke({"count", "--scenario", (kScenarios / "disjoint_three_of_six.json").string(), "--m-size", "64",
                  "--seed", "7", "--out", out.string(), "--format", "json"}) == 0);
  const json doc = read_json(out / "count.json");
  CHECK(doc.at("result").at("count") == 3);
  CHECK(doc.at("result").at("support_size") == 6);
  CHECK_FALSE(fs::exists(out / "count_histogram.csv"));
}

TEST_CASE("exit codes", "[cli]") {
  const auto out = scratch("errors");
  const fs::path malformed = fs::path(QSEARCH_SCENARIO_DIR).parent_path() / "tests" / "data" / "malformed.json";
  CHECK(invoke({"simulate", "--scenario", malformed.string(), "--out", out.string()}) == kExitValidation);
  CHECK(invoke({"simulate", "--scenario", "/nonexistent.json", "--out", out.string()}) == kExitValidation);
  CHECK(invoke({"estimate", "--scenario", (kScenarios / "overlapping_pair.json").string(), "--m-size", "48",
                "--out", out.string()}) == kExitValidation);
  CHECK(invoke({"count", "--scenario", (kScenarios / "disjoint_three_of_six.json").string(), "--m-size", "8",
                "--out", out.string()}) == kExitValidation);
  CHECK(invoke({"simulate", "--out", out.string()}) == kExitValidation);
  CHECK(invoke({"frobnicate"}) == kExitValidation);
  CHECK(invoke({"compare", "--scenario", (kScenarios / "misplaced.json").string(), "--energy", "-1", "--out",
                out.string()}) == kExitValidation);
}

TEST_CASE("identical seeds give byte-identical JSON", "[cli]") {
  for (const char* cmd : {"simulate", "estimate", "count", "verify", "compare"}) {
    const auto a = scratch(std::string("det_a_") + cmd);
    const auto b = scratch(std::string("det_b_") + cmd);
    const auto scenario = (kScenarios / "overlapping_pair.json").string();
    REQUIRE(invoke({cmd, "--scenario", scenario, "--seed", "11", "--out", a.string()}) == 0);
    REQUIRE(invoke({cmd, "--scenario", scenario, "--seed", "11", "--out", b.string()}) == 0);
    for (const auto& entry : fs::directory_iterator(a)) {
      CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
    }
  }
}

TEST_CASE("sweep writes the curve and bound reports", "[cli]") {
  const auto out = scratch("sweep");
  REQUIRE(invoke({"sweep", "--points", "11", "--suite-count", "5", "--out", out.string()}) == 0);
  const json doc = read_json(out / "sweep.json");
  CHECK(doc.at("curve").size() == 11);
  CHECK(doc.at("bound_reports").size() == 10);
  for (const auto& r : doc.at("bound_reports")) CHECK(r.at("satisfied") == true);
  CHECK(slurp(out / "sweep.csv").rfind("alpha2,nu,y,T\n", 0) == 0);
  CHECK(invoke({"sweep", "--alpha-max", "1.0", "--out", out.string()}) == kExitValidation);
}

TEST_CASE("config file supplies defaults, flags win", "[cli]") {
  const auto out = scratch("config");
  const auto cfg = out.string() + ".toml";
  std::ofstream(cfg) << "scenario = \"" << (kScenarios / "overlapping_pair.json").string() << "\"\n"
                     << "m-size = 16\nseed = 3\nformat = \"json\"\nout = \"" << out.string() << "\"\n";
  REQUIRE(invoke({"--config", cfg, "estimate", "--m-size", "32"}) == 0);
  const json doc = read_json(out / "estimate.json");
  CHECK(doc.at("estimate").at("m_size") == 32);
  CHECK(doc.at("seed") == 3);
}
