#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("entgram_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Runs the binary with stdout captured to `stdout_name` inside the temp dir.
  int run(const std::string& args, const std::string& stdout_name = "stdout.txt") {
    const std::string cmd = std::string("\"") + ENTGRAM_CLI_PATH + "\" " + args + " > \"" +
                            path(stdout_name) + "\" 2> \"" + path("stderr.txt") + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string slurp(const std::string& name) const {
    std::ifstream f(path(name), std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
  }

  fs::path dir_;
};

const char* kBell =
    R"({"d": 2, "trunc_dim": 2, "coeffs": [[[0.7071067811865476, 0], [0, 0]],
        [[0, 0], [0.7071067811865476, 0]]], "normalized": true})";

}  // namespace

TEST_F(Cli, AnalyzeBellLikeState) {
  write("bell.json", kBell);
  ASSERT_EQ(run("analyze " + path("bell.json")), 0);
  const json j = json::parse(slurp("stdout.txt"));
  EXPECT_NEAR(j["entropy"].get<double>(), std::log(2.0), 1e-12);
  EXPECT_EQ(j["maximal"], true);
  ASSERT_EQ(run("analyze " + path("bell.json") + " --log-base 2 --format csv"), 0);
  const std::string csv = slurp("stdout.txt");
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "entropy,max_entropy,base,deviation,schmidt_rank,maximal");
  EXPECT_EQ(csv.substr(csv.find('\n') + 1, 8), "1,1,2,1.");  // deviation is rounding-level
  EXPECT_NE(csv.find(",2,true\n"), std::string::npos);
}

TEST_F(Cli, AnalyzeWritesOutFile) {
  write("bell.json", kBell);
  ASSERT_EQ(run("analyze " + path("bell.json") + " --out " + path("r.json")), 0);
  EXPECT_TRUE(slurp("stdout.txt").empty());
  EXPECT_EQ(json::parse(slurp("r.json"))["schmidt_rank"], 2);
}

TEST_F(Cli, InputValidationExitsTwo) {
  write("bad_shape.json",
        R"({"d": 2, "trunc_dim": 3, "coeffs": [[[1,0],[0,0]],[[0,0],[0,0]]], "normalized": false})");
  EXPECT_EQ(run("analyze " + path("bad_shape.json")), 2);
  EXPECT_NE(slurp("stderr.txt").find("coeffs"), std::string::npos);
  write("garbage.json", "{not json");
  EXPECT_EQ(run("analyze " + path("garbage.json")), 2);
  EXPECT_EQ(run("scan2d --grid-p 1"), 2);
  EXPECT_EQ(run("scan4d --family Z"), 2);
  EXPECT_EQ(run("verify --epsilon -1"), 2);
  EXPECT_EQ(run("bogus"), 2);
  EXPECT_EQ(run(""), 2);
}

TEST_F(Cli, ZeroStateExitsThree) {
  write("zero.json",
        R"({"d": 2, "trunc_dim": 1, "coeffs": [[[0,0]],[[0,0]]], "normalized": false})");
  EXPECT_EQ(run("analyze " + path("zero.json")), 3);
}

TEST_F(Cli, IoFailuresExitFour) {
  EXPECT_EQ(run("analyze " + path("missing.json")), 4);
  write("bell.json", kBell);
  EXPECT_EQ(run("analyze " + path("bell.json") + " --out " + path("no/such/dir/r.json")), 4);
}

TEST_F(Cli, Scan2dCsv) {
  ASSERT_EQ(run("scan2d --grid-p 5 --grid-sigma 3"), 0);
  const std::string csv = slurp("stdout.txt");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "p,sigma,feasible,entropy,deviation");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 16);
  EXPECT_NE(slurp("stderr.txt").find("max entropy 0.69314718056 at p=0.5 sigma=0"),
            std::string::npos);
}

TEST_F(Cli, Scan4dFamilyE) {
  ASSERT_EQ(run("scan4d --family E --grid-sigma 5 --out " + path("e.csv")), 0);
  const std::string csv = slurp("e.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "family,p,sigma1,sigma2,sigma3,feasible,entropy,deviation");
  EXPECT_NE(csv.find("E,0.25,0.25,0,0,1,1.03972077084,"), std::string::npos);
}

TEST_F(Cli, VerifyExitCodesAndEmptySet) {
  ASSERT_EQ(run("verify --d 2 --samples 500 --epsilon 0.05 --restarts 2"), 0);
  const json j = json::parse(slurp("stdout.txt"));
  EXPECT_EQ(j["violations"], 0);
  EXPECT_GT(j["gap"].get<double>(), 0.0);

  ASSERT_EQ(run("verify --d 2 --samples 100 --epsilon 10"), 0);
  const json empty = json::parse(slurp("stdout.txt"));
  EXPECT_EQ(empty["constrained_set_empty"], true);
  EXPECT_TRUE(empty.contains("note"));
  EXPECT_TRUE(empty["max_entropy"].is_null());
}

TEST_F(Cli, RepeatedRunsAreByteIdentical) {
  ASSERT_EQ(run("verify --d 3 --samples 300 --restarts 2 --seed 5", "a.json"), 0);
  ASSERT_EQ(run("verify --d 3 --samples 300 --restarts 2 --seed 5", "b.json"), 0);
  EXPECT_EQ(slurp("a.json"), slurp("b.json"));
  ASSERT_EQ(run("scan4d --family C --grid-sigma 5", "c1.csv"), 0);
  ASSERT_EQ(run("scan4d --family C --grid-sigma 5", "c2.csv"), 0);
  EXPECT_EQ(slurp("c1.csv"), slurp("c2.csv"));
}

TEST_F(Cli, SampleThenAnalyze) {
  ASSERT_EQ(run("sample --d 3 --trunc-dim 5 --count 3 --seed 8 --out " + path("s")), 0);
  for (int i = 0; i < 3; ++i) {
    const std::string name = "s_" + std::to_string(i) + ".json";
    ASSERT_TRUE(fs::exists(path(name))) << name;
    ASSERT_EQ(run("analyze " + path(name), "r.json"), 0);
    const json r = json::parse(slurp("r.json"));
    EXPECT_EQ(r["schmidt_rank"], 3);
    EXPECT_LE(r["entropy"].get<double>(), std::log(3.0));
  }
  ASSERT_EQ(run("sample --d 3 --trunc-dim 5 --count 1 --seed 8 --out " + path("t")), 0);
  EXPECT_EQ(slurp("s_0.json"), slurp("t_0.json"));
}
