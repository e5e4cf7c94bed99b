#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dyadic/cli.hpp"

using namespace dyadic;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome run_with(const cli::ExperimentConfig& cfg) {
  std::ostringstream out, err;
  const int status = cli::run(cfg, out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) v.push_back(line);
  return v;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, InvalidConfigurations) {
  cli::ExperimentConfig cfg;
  cfg.depth = 4;
  EXPECT_EQ(run_with(cfg).status, cli::kExitInvalidConfig);
  cfg.depth = 6;
  cfg.dimension = 1;
  EXPECT_EQ(run_with(cfg).status, cli::kExitInvalidConfig);
  cfg.dimension = 2;
  cfg.mode = "plot";
  EXPECT_EQ(run_with(cfg).status, cli::kExitInvalidConfig);
  cfg.mode = "sets";
  cfg.perm_file = "/nonexistent/perm.json";
  EXPECT_EQ(run_with(cfg).status, cli::kExitInvalidConfig);
  cfg.perm_file.reset();
  cfg.stages = 3;
  cfg.depth = 21;
  EXPECT_EQ(run_with(cfg).status, cli::kExitInvalidConfig);  // rank-21 enumeration refused
}

TEST(Cli, Sets) {
  cli::ExperimentConfig cfg;
  cfg.mode = "sets";
  const auto r = run_with(cfg);
  ASSERT_EQ(r.status, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 1u + 256u + 1u);
  EXPECT_EQ(rows.front(), "record,rank,m1,m2,measure_mantissa,measure_exponent,measure");
  EXPECT_EQ(rows.back(), "total,5,,,1,-2,1/4");
}

TEST(Cli, Coeffs) {
  cli::ExperimentConfig cfg;
  cfg.mode = "coeffs";
  const auto r = run_with(cfg);
  ASSERT_EQ(r.status, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 257u);
  EXPECT_EQ(rows.front(), "n1,n2,closed_mantissa,closed_exp,brute_mantissa,brute_exp,equal");
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_TRUE(rows[i].ends_with(",true")) << rows[i];
}

TEST(Cli, SumsAndJson) {
  cli::ExperimentConfig cfg;
  cfg.mode = "sums";
  cfg.format = "json";
  const auto r = run_with(cfg);
  ASSERT_EQ(r.status, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["config"]["mode"], "sums");
  ASSERT_FALSE(doc["records"].empty());
  std::set<std::string> modes;
  for (const auto& rec : doc["records"]) {
    modes.insert(rec["mode"].get<std::string>().substr(0, 4));
    if (rec["mode"] == "cubic") EXPECT_EQ(rec["n1"], rec["n2"]);
  }
  EXPECT_EQ(modes, (std::set<std::string>{"rect", "cubi", "lamb", "iter"}));
}

TEST(Cli, USet) {
  cli::ExperimentConfig cfg;
  cfg.mode = "uset";
  cfg.format = "json";
  const auto r = run_with(cfg);
  ASSERT_EQ(r.status, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  for (const auto& rec : doc["records"]) {
    EXPECT_TRUE(rec.contains("integral_value_mantissa"));
    EXPECT_TRUE(rec["ok"].get<bool>());
  }
}

TEST(Cli, VerifyBinary) {
  const fs::path dir = fs::temp_directory_path() / "walshlab_cli_test";
  fs::create_directories(dir);
  const fs::path out = dir / "verify.csv";
  const std::string cmd = std::string(WALSHLAB_PATH) + " --mode verify -d 2 -S 2 -K 6 --out " + out.string();
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  const auto rows = lines(slurp(out));
  ASSERT_GT(rows.size(), 10u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_NE(rows[i].find(",pass,"), std::string::npos) << rows[i];
  const std::string bad = std::string(WALSHLAB_PATH) + " --mode verify --depth 3 > /dev/null 2>&1";
  EXPECT_EQ(WEXITSTATUS(std::system(bad.c_str())), 2);
  const std::string unknown = std::string(WALSHLAB_PATH) + " --bogus > /dev/null 2>&1";
  EXPECT_EQ(WEXITSTATUS(std::system(unknown.c_str())), 2);
  fs::remove_all(dir);
}
