// Copyright 2026 The QIRB Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <unistd.h>

#include "qirb/cli.hpp"
#include "qirb/io.hpp"

namespace qirb {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::path(::testing::TempDir()) / ("qirb_cli_" + std::string(info->name()) + "_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override {
    fs::remove_all(dir_);
  }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run_cli(args, out_, err_);
  }

  std::string path(const std::string &name) const {
    return (dir_ / name).string();
  }

  static std::string slurp(const std::string &p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, DesignDefaultsGiveSeventyFiveCircuits) {
  ASSERT_EQ(run({"design", "--n", "2", "--p-cnot", "0.35", "--p-mcm", "0.2", "--out", path("d")}), kExitOk)
      << err_.str();
  json circuits = read_json_file(path("d/circuits.json"));
  EXPECT_EQ(circuits.at("circuits").size(), 75u);
  ExperimentDesign design = parse_design_document(read_json_file(path("d/design.json")));
  EXPECT_EQ(design.depths, (std::vector<std::size_t>{0, 1, 4, 32, 128}));
  EXPECT_EQ(design.circuits_per_depth, 15u);
  EXPECT_EQ(design.shots, 100u);
}

TEST_F(CliTest, DesignIsByteIdenticalForSameSeed) {
  std::vector<std::string> args{"design", "--n", "3", "--p-mcm", "0.3", "--seed", "9", "--no-reset", "--out"};
  auto a = args, b = args;
  a.push_back(path("a"));
  b.push_back(path("b"));
  ASSERT_EQ(run(a), kExitOk);
  ASSERT_EQ(run(b), kExitOk);
  EXPECT_EQ(slurp(path("a/circuits.json")), slurp(path("b/circuits.json")));
  EXPECT_EQ(slurp(path("a/design.json")), slurp(path("b/design.json")));
  EXPECT_FALSE(parse_design_document(read_json_file(path("a/design.json"))).sampling.reset);
}

TEST_F(CliTest, DepthZeroHasOnlyPrepAndFinal) {
  ASSERT_EQ(run({"design", "--depths", "0", "--out", path("d")}), kExitOk);
  for (const DesignedCircuit &c : parse_circuits_document(read_json_file(path("d/circuits.json")))) {
    EXPECT_EQ(c.circuit.depth(), 0u);
    EXPECT_EQ(c.circuit.num_mcms, 0u);
  }
}

TEST_F(CliTest, NoiselessPipelineFitsPerfectDecay) {
  ASSERT_EQ(run({"design", "--n", "2", "--depths", "0,1,4,8", "--circuits-per-depth", "4", "--shots", "50", "--p-mcm",
                 "0.5", "--no-reset", "--out", path("d")}),
            kExitOk);
  ASSERT_EQ(run({"simulate", "--circuits", path("d"), "--f1q", "1", "--f2q", "1", "--mcm-flip", "0", "--out",
                 path("results.json")}),
            kExitOk)
      << err_.str();
  ResultsData results = parse_results_document(read_json_file(path("results.json")));
  for (const CircuitResult &c : results.circuits) EXPECT_EQ(c.failures, 0u);
  ASSERT_EQ(run({"analyze", path("results.json"), "--bootstrap", "10", "--no-erm", "--out", path("report.json"),
                 "--csv", path("curve.csv")}),
            kExitOk)
      << err_.str();
  json report = read_json_file(path("report.json"));
  EXPECT_EQ(report.at("schema"), "qirb.report");
  const json &fit = report.at("datasets").at(0).at("fit");
  EXPECT_NEAR(fit.at("r_omega").get<double>(), 0.0, 1e-12);
  EXPECT_NEAR(fit.at("amplitude").get<double>(), 1.0, 1e-12);
  std::istringstream csv(slurp(path("curve.csv")));
  int lines = 0;
  for (std::string line; std::getline(csv, line);) lines++;
  EXPECT_EQ(lines, 1 + 4);
}

TEST_F(CliTest, SimulateIsThreadIndependent) {
  ASSERT_EQ(run({"design", "--n", "3", "--depths", "0,2,6", "--circuits-per-depth", "3", "--shots", "40", "--p-mcm",
                 "0.4", "--out", path("d")}),
            kExitOk);
  for (const char *threads : {"1", "3"}) {
    ASSERT_EQ(run({"simulate", "--circuits", path("d/circuits.json"), "--threads", threads, "--out",
                   path(std::string("r") + threads + ".json")}),
              kExitOk);
  }
  EXPECT_EQ(slurp(path("r1.json")), slurp(path("r3.json")));
}

TEST_F(CliTest, NoiseFileOverridesShorthand) {
  ASSERT_EQ(run({"design", "--depths", "0,3", "--circuits-per-depth", "2", "--shots", "30", "--out", path("d")}),
            kExitOk);
  std::ofstream(path("noise.json")) << noise_document(NoiseModel::noiseless()).dump();
  ASSERT_EQ(run({"simulate", "--circuits", path("d"), "--noise", path("noise.json"), "--f1q", "0.5", "--out",
                 path("r.json")}),
            kExitOk)
      << err_.str();
  for (const CircuitResult &c : parse_results_document(read_json_file(path("r.json"))).circuits) {
    EXPECT_EQ(c.failures, 0u);
  }
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({"design", "--bogus"}), kExitUsage);
  EXPECT_EQ(run({}), kExitUsage);
  EXPECT_EQ(run({"design", "--p-cnot", "2", "--out", path("d")}), kExitUsage);
  EXPECT_NE(err_.str().find("p_cnot"), std::string::npos);

  ASSERT_EQ(run({"design", "--depths", "3", "--circuits-per-depth", "2", "--shots", "10", "--out", path("d")}),
            kExitOk);
  ASSERT_EQ(run({"simulate", "--circuits", path("d"), "--out", path("r.json")}), kExitOk);
  EXPECT_EQ(run({"analyze", path("r.json"), "--no-erm", "--out", path("report.json")}), kExitFitDegenerate);

  json doc = read_json_file(path("d/circuits.json"));
  doc["version"] = 7;
  std::ofstream(path("future.json")) << doc.dump();
  EXPECT_EQ(run({"simulate", "--circuits", path("future.json"), "--out", path("x.json")}), kExitSchema);
  EXPECT_NE(err_.str().find("version 7"), std::string::npos) << err_.str();
  EXPECT_NE(err_.str().find("version 1"), std::string::npos) << err_.str();
  EXPECT_FALSE(fs::exists(path("x.json")));
}

TEST_F(CliTest, PredictZeroNoiseAndBounds) {
  ASSERT_EQ(run({"predict", "--f1q", "1", "--f2q", "1", "--mcm-flip", "0"}), kExitOk);
  json zero = json::parse(out_.str());
  EXPECT_EQ(zero.at("r_omega").get<double>(), 0.0);
  EXPECT_EQ(zero.at("schema"), "qirb.prediction");

  for (const char *pm : {"0.01", "0.1", "0.5"}) {
    ASSERT_EQ(run({"predict", "--n", "3", "--p-mcm", pm, "--out", path("p.json")}), kExitOk);
    json p = read_json_file(path("p.json"));
    const double r = p.at("r_omega").get<double>();
    EXPECT_LE(p.at("bound").at("lower").get<double>(), r);
    EXPECT_LE(r, p.at("bound").at("upper").get<double>());
    EXPECT_EQ(p.at("curve").size(), 5u);
  }
  ASSERT_EQ(run({"predict", "--mode", "density", "--n", "3", "--p-mcm", "0.3"}), kExitOk);
  json mc = json::parse(out_.str());
  EXPECT_EQ(mc.at("method"), "monte-carlo");
  EXPECT_FALSE(mc.at("warnings").empty());
}

TEST_F(CliTest, CliffordTableHasTwentyFourRows) {
  ASSERT_EQ(run({"cliffords"}), kExitOk);
  std::istringstream in(out_.str());
  int rows = 0;
  for (std::string line; std::getline(in, line);) rows++;
  EXPECT_EQ(rows, 25);
}

}  // namespace
}  // namespace qirb
