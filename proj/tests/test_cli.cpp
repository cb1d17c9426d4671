#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "hyper/cli.hpp"

namespace hyper {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("hyper_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run_cli(args, out_, err_);
  }

  std::string write_config(const std::string& name, const std::string& body) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << body;
    return p.string();
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, sep);) out.push_back(cell);
  return out;
}

TEST_F(CliTest, MaclaneDemoSummaryMatchesCsv) {
  ASSERT_EQ(run({"demo", "maclane", "--out", dir_.string()}), kExitOk) << err_.str();
  const std::string csv = slurp(dir_ / "demo_maclane.csv");
  std::istringstream lines(csv);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header, "step,n,sampled_src,sampled_tgt,certified_src,certified_tgt,terms_in_h");
  const auto cells = split(row, ',');
  ASSERT_EQ(cells.size(), 7u);
  const std::string summary = out_.str();
  EXPECT_NE(summary.find("n=" + cells[1]), std::string::npos);
  EXPECT_NE(summary.find("sampled_src=" + cells[2]), std::string::npos);
  EXPECT_NE(summary.find("sampled_tgt=" + cells[3]), std::string::npos);
  EXPECT_NE(summary.find("certified_src=" + cells[4]), std::string::npos);
  EXPECT_NE(summary.find("certified_tgt=" + cells[5]), std::string::npos);
}

TEST_F(CliTest, MaclaneLooseEpsilon) {
  EXPECT_EQ(run({"demo", "maclane", "--epsilon", "0.5", "--out", dir_.string()}), kExitOk) << err_.str();
}

TEST_F(CliTest, UnreachableToleranceExitsFour) {
  EXPECT_EQ(run({"demo", "birkhoff", "--epsilon", "1e-12", "--budget", "1", "--out", dir_.string()}), kExitTolerance);
}

TEST_F(CliTest, DemosAreByteIdenticalOnRerun) {
  for (const std::string name : {"maclane", "godefroy-shapiro", "multidirection", "varying", "birkhoff"}) {
    const fs::path a = dir_ / "a", b = dir_ / "b";
    const int ca = run({"demo", name, "--seed", "5", "--out", a.string()});
    const int cb = run({"demo", name, "--seed", "5", "--out", b.string()});
    EXPECT_EQ(ca, cb) << name;
    const std::string file = "demo_" + name + ".csv";
    ASSERT_TRUE(fs::exists(a / file)) << name;
    EXPECT_EQ(slurp(a / file), slurp(b / file)) << name;
  }
}

TEST_F(CliTest, MalformedConfigReportsLine) {
  const std::string cfg = write_config("bad.cfg", "dimension = 1\nsymbol = exp\ndirection 1\n");
  EXPECT_EQ(run({"witness", "--config", cfg}), kExitConfig);
  EXPECT_NE(err_.str().find("line 3"), std::string::npos) << err_.str();
}

TEST_F(CliTest, BadTargetReportsLine) {
  const std::string cfg = write_config("bad.cfg", "dimension = 1\nsymbol = exp\ndirection = 1\n\ntarget = 1 0 : 1 1 : 0 0\n");
  EXPECT_EQ(run({"witness", "--config", cfg}), kExitConfig);
  EXPECT_NE(err_.str().find("line 5"), std::string::npos) << err_.str();
}

TEST_F(CliTest, MissingTargetFile) {
  const std::string cfg = write_config("c.cfg", "dimension = 1\nsymbol = exp\ndirection = 1\ntarget_file = nope.txt\n");
  EXPECT_EQ(run({"witness", "--config", cfg}), kExitConfig);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}), kExitConfig);
  EXPECT_EQ(run({"demo", "nonesuch"}), kExitConfig);
  EXPECT_EQ(run({"demo", "maclane", "--frobnicate", "1"}), kExitConfig);
  EXPECT_EQ(run({"witness"}), kExitConfig);
  EXPECT_EQ(run({"demo", "maclane", "--epsilon", "abc"}), kExitConfig);
}

TEST_F(CliTest, WitnessFromConfig) {
  std::ofstream(dir_ / "t.txt") << "1 0 : 2 : 0 0\n";
  const std::string cfg = write_config(
      "w.cfg", "dimension = 1\noperator = single\nsymbol = exp\ndirection = 1\ntarget_file = t.txt\nepsilon = 0.1\nout = " +
                   dir_.string() + "\n");
  ASSERT_EQ(run({"witness", "--config", cfg}), kExitOk) << err_.str();
  const std::string csv = slurp(dir_ / "witness.csv");
  EXPECT_EQ(split(csv, '\n').size(), 2u);
}

TEST_F(CliTest, ApproxWritesCombo) {
  const std::string cfg = write_config(
      "a.cfg", "dimension = 1\nsymbol = exp\ndirection = 1\ntarget = 1 0 : 1 : 0 0\nregion = V\nepsilon = 0.1\n");
  ASSERT_EQ(run({"approx", "--config", cfg, "--out", dir_.string()}), kExitOk) << err_.str();
  EXPECT_NO_THROW(parse_exp_poly(slurp(dir_ / "approx.txt"), NormTag::L2, 1));
  const auto rows = split(slurp(dir_ / "approx.csv"), '\n');
  ASSERT_EQ(rows.size(), 2u);
  const auto cells = split(rows[1], ',');
  EXPECT_LT(std::stod(cells[1]), 0.1);
  EXPECT_LE(std::stod(cells[1]), std::stod(cells[2]));
}

TEST_F(CliTest, SearchFailureExitsThree) {
  const std::string cfg = write_config(
      "s.cfg", "dimension = 1\nsymbol = poly:5,0;1,0\ndirection = 1\ntarget = 1 0 : 1 : 0 0\nregion = U\nbudget = 1\n");
  EXPECT_EQ(run({"approx", "--config", cfg, "--out", dir_.string()}), kExitSearch) << err_.str();
}

TEST_F(CliTest, Report) {
  const std::string cfg = write_config("r.cfg", "dimension = 1\nsymbol = exp\ndirection = 1\n");
  ASSERT_EQ(run({"report", "--config", cfg, "--out", dir_.string()}), kExitOk) << err_.str();
  EXPECT_NE(out_.str().find("identity_defect="), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "report.csv"));
}

}  // namespace
}  // namespace hyper
