#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "coxroot/cli.hpp"

namespace {

using nlohmann::json;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  CliRun r;
  r.code = coxroot::run_command(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string fixture(const std::string& name) { return std::string(COXROOT_FIXTURE_DIR) + "/" + name + ".json"; }

struct GoldenCase {
  std::string name;
  std::vector<std::string> args;
};

std::vector<GoldenCase> golden_cases() {
  return {
      {"validate_a2", {"validate", fixture("a2")}},
      {"validate_example312", {"validate", fixture("example312_reconstruction")}},
      {"classify_a2", {"classify", fixture("a2")}},
      {"classify_example312", {"classify", fixture("example312_reconstruction")}},
      {"classify_nonunital", {"classify", fixture("nonunital_triangle")}},
      {"roots_asym_m3", {"roots", fixture("asym_m3")}},
      {"roots_pq4_bounded", {"roots", fixture("dihedral_pq4"), "--max-length", "4"}},
      {"bounds_g2", {"bounds", fixture("g2")}},
      {"smult_asym_m3", {"smult", fixture("asym_m3"), "--node", "2"}},
      {"smult_nonunital", {"smult", fixture("nonunital_triangle"), "--node", "1"}},
      {"inversions_b2", {"inversions", fixture("b2"), "--word", "1,2,1"}},
      {"reduce_a3", {"reduce", fixture("a3"), "--word", "1,2,1,2,3,3"}},
      {"factor_asym_m3", {"factor", fixture("asym_m3"), "--word", "1,2", "--node", "1"}},
      {"dominance_example48", {"dominance", fixture("example48"), "--alpha", "2,1", "--beta", "1,0"}},
      {"game_a2", {"game", fixture("a2"), "--position", "1,1"}},
      {"game_moves", {"game", fixture("a2"), "--position", "1,1", "--moves", "2,1"}},
      {"cone_example48", {"cone", fixture("example48"), "--position", "1,-1/2"}},
      {"finite_g2", {"finite", fixture("g2")}},
      {"finite_pq5", {"finite", fixture("dihedral_pq5"), "--max-steps", "500"}},
      {"error_missing_file", {"classify", "no/such/graph.json"}},
      {"error_illegal_move", {"game", fixture("a2"), "--position", "1,1", "--moves", "1,1"}},
  };
}

TEST(Cli, GoldenJsonOutputs) {
  const bool update = std::getenv("COXROOT_UPDATE_GOLDEN") != nullptr;
  for (const auto& c : golden_cases()) {
    std::vector<std::string> args{"--json"};
    args.insert(args.end(), c.args.begin(), c.args.end());
    const CliRun r = run(args);
    const json actual = {{"exit", r.code}, {"output", json::parse(r.out)}};
    const std::string path = std::string(COXROOT_GOLDEN_DIR) + "/" + c.name + ".json";
    if (update) {
      std::ofstream(path) << actual.dump(2) << "\n";
      continue;
    }
    std::ifstream in(path);
    ASSERT_TRUE(in.good()) << "missing golden file " << path;
    EXPECT_EQ(actual, json::parse(in)) << c.name << "\n" << actual.dump(2);
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, coxroot::kExitUsage);
  EXPECT_EQ(run({"classify"}).code, coxroot::kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, coxroot::kExitUsage);
  EXPECT_EQ(run({"smult", fixture("a2"), "--node", "x"}).code, coxroot::kExitUsage);
  const CliRun missing = run({"classify", "no/such/graph.json"});
  EXPECT_EQ(missing.code, coxroot::kExitDomainError);
  EXPECT_NE(missing.err.find("IoError"), std::string::npos);
  EXPECT_EQ(run({"smult", fixture("a2"), "--node", "9"}).code, coxroot::kExitDomainError);
  EXPECT_EQ(run({"validate", fixture("a2")}).code, coxroot::kExitOk);
}

TEST(Cli, HumanReadableGame) {
  const CliRun r = run({"game", fixture("a2"), "--position", "1,1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("terminated in 3 steps"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("reduced"), std::string::npos);
}

TEST(Cli, ReduceThenInversionsIsStable) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"a2", "1,2,1,2"},         {"b2", "2,1,1,2,1"},   {"g2", "1,2,1,2,1,2,1"},
      {"a3", "3,2,1,2,3,1,2"},   {"asym_m3", "1,2,2,1,2"}, {"asym_m3_quarter", "2,1,2,1"},
      {"example48", "1,2,1,1,2"}, {"example312_rational", "1,2,3,3,2,4,5,6,5"}};
  for (const auto& [name, w] : cases) {
    const CliRun reduced = run({"--json", "reduce", fixture(name), "--word", w});
    ASSERT_EQ(reduced.code, 0) << reduced.out;
    std::string rw;
    const json parsed = json::parse(reduced.out);
    for (const auto& letter : parsed["reduced"]) {
      rw += (rw.empty() ? "" : ",") + std::to_string(letter.get<int>());
    }
    const CliRun direct = run({"--json", "inversions", fixture(name), "--word", w});
    ASSERT_EQ(direct.code, 0);
    if (rw.empty()) {
      EXPECT_TRUE(json::parse(direct.out)["roots"].empty());
      continue;
    }
    const CliRun via = run({"--json", "inversions", fixture(name), "--word", rw});
    EXPECT_EQ(json::parse(direct.out), json::parse(via.out)) << name;
  }
}

}  // namespace
