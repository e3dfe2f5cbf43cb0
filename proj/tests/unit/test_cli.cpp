#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = genent::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& s) {
  std::vector<std::string> rows;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  return rows;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("genent_test_" + name);
}

}  // namespace

TEST(Cli, FormatReal) {
  EXPECT_EQ(genent::cli::format_real(0.5), "0.5");
  EXPECT_EQ(genent::cli::format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(genent::cli::format_real(std::nan("")), "nan");
}

TEST(Cli, PurityOfGhzAndProduct) {
  Result r = run({"purity", "--algebra", "local-qubits", "--n", "4", "--state", "ghz"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = data_lines(r.out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].rfind("ghz,0,entangled,", 0), 0u) << rows[0];

  r = run({"purity", "--n", "3", "--state", "product", "--theta", "0.4"});
  ASSERT_EQ(r.code, 0) << r.err;
  rows = data_lines(r.out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NE(rows[0].find(",unentangled,"), std::string::npos) << rows[0];
}

TEST(Cli, SpinStates) {
  Result r = run({"purity", "--algebra", "spin", "--spin", "1", "--state", "spin", "--m", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(data_lines(r.out).at(0).rfind("spin,0,entangled", 0), 0u);
}

TEST(Cli, ConfigurationErrorsExitTwo) {
  EXPECT_EQ(run({"purity", "--algebra", "nosuch"}).code, 2);
  EXPECT_EQ(run({"purity", "--state", "nosuch"}).code, 2);
  EXPECT_EQ(run({"purity", "--n", "13"}).code, 2);
  EXPECT_EQ(run({"scan-xy", "--n", "7"}).code, 2);
  EXPECT_EQ(run({"nosuch"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"roof", "--mixed", "werner", "--p", "2"}).code, 2);
  EXPECT_EQ(run({"theorem-check", "--algebra", "collective-spin"}).code, 2);
  const Result r = run({"purity", "--algebra", "nosuch"});
  EXPECT_NE(r.err.find("nosuch"), std::string::npos);
}

TEST(Cli, HelpExitsZero) {
  const Result r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("scan-xy"), std::string::npos);
}

TEST(Cli, ScanWritesRowsAndDatFile) {
  const auto csv = temp_path("scan.csv");
  const auto dat = temp_path("scan.dat");
  std::filesystem::remove(dat);
  const Result r = run({"--out", csv.string(), "scan-xy", "--n", "100", "--gmin", "0", "--gmax", "2", "--steps", "41"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream f(csv);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(data_lines(ss.str()).size(), 41u);
  ASSERT_TRUE(std::filesystem::exists(dat));
  std::ifstream d(dat);
  std::stringstream ds;
  ds << d.rdbuf();
  EXPECT_EQ(data_lines(ds.str()).size(), 41u);
  std::filesystem::remove(csv);
  std::filesystem::remove(dat);
}

TEST(Cli, ScanEstimateLines) {
  const Result r = run({"scan-xy", "--n", "400", "--gmin", "0.5", "--gmax", "1.5", "--steps", "501", "--estimate"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# g_c_hat="), std::string::npos);
  EXPECT_NE(r.out.find("# nu_hat="), std::string::npos);
}

TEST(Cli, FixedSeedOutputIsByteIdentical) {
  const std::vector<std::string> args{"roof", "--mixed", "random", "--rank", "2", "--mixed-seed", "5",
                                      "--restarts", "4", "--seed", "3"};
  const Result a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const std::vector<std::string> g{"glocc-check", "--mixed", "random", "--trials", "3", "--restarts", "3"};
  EXPECT_EQ(run(g).out, run(g).out);
}

TEST(Cli, RoofOnWernerState) {
  const Result r = run({"roof", "--mixed", "werner", "--p", "1", "--restarts", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = data_lines(r.out);
  ASSERT_EQ(rows.size(), 1u);
  std::istringstream in(rows[0]);
  std::string alg, state, value;
  std::getline(in, alg, ',');
  std::getline(in, state, ',');
  std::getline(in, value, ',');
  EXPECT_NEAR(std::stod(value), 1.0, 1e-8);
}

TEST(Cli, TheoremCheckSummary) {
  const Result r = run({"theorem-check", "--algebra", "spin", "--spin", "1.5", "--orbit-samples", "5",
                        "--random-samples", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = data_lines(r.out);
  ASSERT_EQ(rows.size(), 11u);
  EXPECT_EQ(rows.back(), "summary,5,5,0,0,0");
}

TEST(Cli, ConfigFileAndOverride) {
  const auto cfg = temp_path("cfg.toml");
  {
    std::ofstream f(cfg);
    f << "[purity]\nn = 3\nstate = \"w\"\n";
  }
  Result r = run({"--config", cfg.string(), "purity"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(data_lines(r.out).at(0).rfind("w,", 0), 0u);
  r = run({"--config", cfg.string(), "purity", "--state", "ghz"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(data_lines(r.out).at(0).rfind("ghz,0,", 0), 0u);
  std::filesystem::remove(cfg);
}
