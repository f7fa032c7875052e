#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli/cli.hpp"
#include "cli/config.hpp"
#include "cli/format.hpp"

namespace idpart::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("idpart_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string config(const std::string& json) {
    const auto p = dir_ / ("cfg" + std::to_string(counter_++) + ".json");
    std::ofstream(p) << json;
    return p.string();
  }

  Result with(const std::string& command, const std::string& json, std::vector<std::string> extra = {}) {
    std::vector<std::string> args{command, "--config", config(json)};
    args.insert(args.end(), extra.begin(), extra.end());
    return run_cli(args);
  }

  fs::path dir_;
  int counter_ = 0;
};

TEST(Format, TwelveSignificantDigits) {
  EXPECT_EQ(fmt12(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(fmt12(-0.0), "0");
  EXPECT_EQ(fmt12(2.0), "2");
  EXPECT_EQ(fmt12(1e-30), "1e-30");
  EXPECT_EQ(round12(0.1 + 0.2), 0.3);
}

TEST(Config, ComplexParsing) {
  EXPECT_EQ(parse_complex(Json::parse("[1, -2]"), "x"), Complex(1, -2));
  EXPECT_EQ(parse_complex(Json::parse("0.5"), "x"), Complex(0.5, 0));
  EXPECT_THROW(parse_complex(Json::parse("[1]"), "x"), ConfigError);
  EXPECT_THROW(parse_complex(Json::parse("\"1\""), "x"), ConfigError);
  EXPECT_THROW(parse_complex_matrix(Json::parse("[[1, 0], [0]]"), "m"), ConfigError);
}

TEST_F(CliTest, CountTwoOscillators) {
  const auto r = with("count", R"({"n":3,"d":2,"kinds":["boltzmann","bose_einstein","fermi_dirac"]})");
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("boltzmann,2,3,8,"), std::string::npos);
  EXPECT_NE(r.out.find("bose_einstein,2,3,4,"), std::string::npos);
  EXPECT_NE(r.out.find("fermi_dirac,2,3,0,\n"), std::string::npos);
}

TEST_F(CliTest, CountVacuumAndJson) {
  const auto r = with("count", R"({"N":2,"P":0})", {"--format", "json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["counts"][0]["W"], "1");
  EXPECT_EQ(j["counts"][0]["S"], 0.0);
}

TEST_F(CliTest, CountEnumerationAndCap) {
  const auto r = with("count", R"({"N":4,"P":7,"enumerate":true})");
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("eeeeoeeooe,4 2 0 1\n"), std::string::npos);
  std::size_t rows = 0;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);) {
    if (line.find_first_not_of("eo") == line.find(',') && line.find(',') != std::string::npos) ++rows;
  }
  EXPECT_EQ(rows, 120u);
  EXPECT_EQ(with("count", R"({"N":4,"P":7,"enumerate":true,"cap":100})").code, kResourceCap);
}

TEST_F(CliTest, SchemaViolationsExitTwo) {
  EXPECT_EQ(with("count", R"({"N":2,"P":0,"bogus":1})").code, kConfigError);
  EXPECT_EQ(with("count", R"({"N":"two"})").code, kConfigError);
  EXPECT_EQ(with("count", R"({"N":0,"P":1})").code, kConfigError);
  EXPECT_EQ(with("basis", R"({"d":2})").code, kConfigError);
  EXPECT_EQ(with("analyze", R"({"sector":"symmetric","d":2,"symbol":"f_{x}"})").code, kConfigError);
  EXPECT_EQ(with("hom", R"({"splitter":[[[1,0],[1,0]],[[1,0],[1,0]]]})").code, kConfigError);
  EXPECT_EQ(with("density", R"({"grid":{"n_points":64,"dx":1}})").code, kConfigError);
  EXPECT_EQ(run_cli({"count", "--config", (dir_ / "missing.json").string()}).code, kIoError);
  EXPECT_EQ(with("count", "[1,2]").code, kConfigError);
  EXPECT_EQ(with("count", "{not json").code, kConfigError);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kConfigError);
  EXPECT_EQ(run_cli({"count", "--format", "xml"}).code, kConfigError);
}

TEST_F(CliTest, BasisTables) {
  auto r = with("basis", R"({"d":2,"n":3,"sector":"symmetric","labels":["A","B"]})");
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("0,3 0,f_{e1e1e1},1,A.A.A:1\n"), std::string::npos);
  EXPECT_NE(r.out.find("A.A.B:0.57735026919;A.B.A:0.57735026919;B.A.A:0.57735026919"), std::string::npos);

  r = with("basis", R"({"d":2,"n":3,"sector":"antisymmetric"})");
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "index,occupation,symbol,terms,components\n");
  EXPECT_NE(r.err.find("empty"), std::string::npos);

  r = with("basis", R"({"d":4,"n":2,"sector":"antisymmetric"})");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 7);
  EXPECT_EQ(with("basis", R"({"d":2,"n":30,"sector":"symmetric"})").code, kResourceCap);
}

TEST_F(CliTest, AnalyzeVerdicts) {
  auto r = with("analyze", R"({"sector":"antisymmetric","n_slots":2,"d":2,"amplitudes":[0,[1,0],[-1,0],0]})");
  ASSERT_EQ(r.code, kOk) << r.err;
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["verdict"], "PARTICLE_DECOMPOSITION");
  EXPECT_EQ(j["slater_rank"], 1);

  r = with("analyze", R"({"sector":"symmetric","d":2,"symbol":"f_{e1e1e1}"})");
  j = Json::parse(r.out);
  EXPECT_EQ(j["verdict"], "CONDENSED_OBJECT");
  EXPECT_EQ(j["defining_states"][0]["occupation"], 3);

  r = with("analyze", R"({"sector":"symmetric","d":2,"symbol":"f_{ε₁ε₂}"})");
  EXPECT_EQ(Json::parse(r.out)["verdict"], "PARTICLE_DECOMPOSITION");

  r = with("analyze", R"({"sector":"antisymmetric","n_slots":2,"d":4,
    "amplitudes":[0,1,0,0, -1,0,0,0, 0,0,0,1, 0,0,-1,0]})");
  j = Json::parse(r.out);
  EXPECT_EQ(j["verdict"], "NO_PARTICLE_DECOMPOSITION");
  EXPECT_EQ(j["slater_rank"], 2);

  // |AB> is in neither sector
  EXPECT_EQ(with("analyze", R"({"sector":"symmetric","n_slots":2,"d":2,"amplitudes":[0,1,0,0]})").code,
            kDomainError);
  EXPECT_EQ(with("analyze", R"({"sector":"symmetric","n_slots":2,"d":2,"amplitudes":[0,1,0]})").code,
            kConfigError);
  EXPECT_EQ(with("analyze", R"({"sector":"antisymmetric","d":2,"symbol":"f_{e1e1}"})").code, kDomainError);
}

TEST_F(CliTest, HomScenarios) {
  auto r = with("hom", "{}", {"--format", "json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  auto j = Json::parse(r.out);
  ASSERT_EQ(j["stages"].size(), 1u);
  const auto& fin = j["stages"][0];
  EXPECT_EQ(fin["stage"], "final");
  EXPECT_EQ(fin["p_both_left"], 0.25);
  EXPECT_EQ(fin["p_both_right"], 0.25);
  EXPECT_EQ(fin["p_coincidence"], 0.5);
  EXPECT_EQ(fin["correlators"]["zz"], -1.0);
  EXPECT_EQ(fin["correlators"]["xx"], 1.0);

  r = with("hom", "{}", {"--baseline", "--format", "json"});
  j = Json::parse(r.out);
  ASSERT_EQ(j["stages"].size(), 2u);
  EXPECT_EQ(j["stages"][0]["stage"], "baseline");
  EXPECT_EQ(j["stages"][0]["correlators"]["zz"], -1.0);

  r = with("hom", R"({"splitter":[[[1,0],[0,0]],[[0,0],[1,0]]]})", {"--format", "json"});
  EXPECT_EQ(Json::parse(r.out)["stages"][0]["p_coincidence"], 1.0);
}

TEST_F(CliTest, DensityWritesGridAndSummary) {
  const auto grid = (dir_ / "grid.csv").string();
  auto r = with("density", R"({"separation":10,"grid":{"n_points":64}})", {"--output", grid});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("cross_term_max,"), std::string::npos);
  std::ifstream in(grid);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "x1,x2,rho");
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, 64u * 64u);

  EXPECT_EQ(with("density", R"({"separation":0})").code, kDomainError);
  EXPECT_EQ(with("density", "{}", {"--output", (dir_ / "no" / "such" / "dir.csv").string()}).code, kIoError);
  EXPECT_EQ(with("density", R"({"grid":{"n_points":10}})").code, kDomainError);
}

TEST_F(CliTest, OutputIsDeterministic) {
  for (const char* cmd : {"count", "basis", "hom"}) {
    const std::string cfg = std::string(cmd) == "count" ? R"({"N":3,"P":4,"enumerate":true})"
                            : std::string(cmd) == "basis" ? R"({"d":3,"n":3,"sector":"symmetric"})"
                                                          : "{}";
    const auto a = with(cmd, cfg);
    const auto b = with(cmd, cfg);
    EXPECT_EQ(a.code, kOk);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST_F(CliTest, UnwritableReportPathExitsFive) {
  EXPECT_EQ(with("count", R"({"N":2,"P":1})", {"--output", (dir_ / "x" / "y.csv").string()}).code, kIoError);
}

}  // namespace
}  // namespace idpart::cli
