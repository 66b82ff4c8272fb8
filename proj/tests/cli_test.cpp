// Copyright 2026 The netcost Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "netcost/config.hpp"

namespace netcost {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int status = -1;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("netcost_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string tmp(const std::string& name) const { return (dir_ / name).string(); }
  static std::string fixture(const std::string& name) { return std::string(NETCOST_FIXTURE_DIR) + "/" + name; }

  CliResult run(const std::string& args) const {
    const std::string out = tmp("stdout"), err = tmp("stderr");
    const std::string cmd = "env -u NETCOST_CONFIG '" NETCOST_CLI_PATH "' " + args + " >'" + out + "' 2>'" + err + "'";
    const int raw = std::system(cmd.c_str());
    CliResult r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = read_file(out);
    r.err = read_file(err);
    return r;
  }

  std::string topo() const { return "--topology '" + fixture("topology.json") + "'"; }

  fs::path dir_;
};

bool has(const std::string& haystack, const std::string& needle) { return haystack.find(needle) != std::string::npos; }

TEST_F(CliTest, ClassifyTwoFlows) {
  const auto r = run("--format csv classify --trace '" + fixture("two_flows.csv") + "' " + topo());
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(has(r.out, "cross-zone,1000,80.00\n"));
  EXPECT_TRUE(has(r.out, "internet-egress,250,20.00\n"));
  EXPECT_TRUE(has(r.out, "in-zone,0,0.00\n"));
  EXPECT_TRUE(has(r.out, "total,1250,100.00\n"));
}

TEST_F(CliTest, MissingTopologyExits2AndNamesPath) {
  const auto r = run("classify --trace '" + fixture("two_flows.csv") + "' --topology " + tmp("absent.json"));
  EXPECT_EQ(r.status, 2);
  EXPECT_TRUE(has(r.err, tmp("absent.json"))) << r.err;
}

TEST_F(CliTest, MissingRateExits3) {
  const auto r = run("cost --trace '" + fixture("two_flows.csv") + "' " + topo() + " --usage-profile none");
  EXPECT_EQ(r.status, 3);
  EXPECT_TRUE(has(r.err, "MissingRate")) << r.err;
}

TEST_F(CliTest, BadFlagExits2) {
  EXPECT_EQ(run("extrapolate --cost abc --window 1").status, 2);
  EXPECT_EQ(run("extrapolate --cost 1 --window 0").status, 3);
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("--help").status, 0);
}

TEST_F(CliTest, SimulatedTraceClassifiesAsEgress) {
  const auto sim = run("simulate " + topo() + " --pattern constant --rate 1.3e7 --duration 300 --out " + tmp("t.csv"));
  ASSERT_EQ(sim.status, 0) << sim.err;
  const auto r = run("--format csv classify --trace " + tmp("t.csv") + " " + topo());
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(has(r.out, "internet-egress,3900000000,100.00\n")) << r.out;
}

TEST_F(CliTest, CompareBareMetalColumn) {
  ASSERT_EQ(run("simulate " + topo() + " --pattern constant --rate 1.3e7 --duration 300 --out " + tmp("t.csv")).status,
            0);
  const auto r = run("--format csv compare --trace " + tmp("t.csv") + " --window 300 " + topo());
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(has(r.out, "bare-metal,,176.66\n")) << r.out;
  EXPECT_TRUE(has(r.out, "bare-metal-capacity-bps,,208000000\n")) << r.out;
  // 1.3e7 B/s for 30 days at 0.09 per GB.
  EXPECT_TRUE(has(r.out, "cloud,,3032.64\n")) << r.out;
}

TEST_F(CliTest, AllIngressCloudIsFree) {
  ASSERT_EQ(run("simulate " + topo() + " --pattern constant --rate 1.3e7 --duration 300 --egress-share 0 --out " +
                tmp("t.csv"))
                .status,
            0);
  const auto r = run("--format csv compare --trace " + tmp("t.csv") + " " + topo());
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(has(r.out, "cloud,,0.00\n")) << r.out;
}

TEST_F(CliTest, CsvIsByteIdenticalAcrossRuns) {
  const std::string sim =
      "simulate " + topo() + " --pattern bursty --baseline 1e5 --burst-rate 5e6 --burst-probability 0.05 --seed 11 " +
      "--duration 600";
  const auto a = run(sim), b = run(sim);
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::string trace = tmp("b.csv");
  ASSERT_EQ(run(sim + " --out " + trace).status, 0);
  const std::string cmp = "--format csv compare --trace " + trace + " " + topo();
  const auto c = run(cmp), d = run(cmp);
  ASSERT_EQ(c.status, 0) << c.err;
  EXPECT_FALSE(c.out.empty());
  EXPECT_EQ(c.out, d.out);
}

TEST_F(CliTest, Extrapolate) {
  const auto full = run("--format csv extrapolate --cost 3.34 --window 1800 --scale 1.0");
  ASSERT_EQ(full.status, 0) << full.err;
  EXPECT_TRUE(has(full.out, ",4809.60\n")) << full.out;
  const auto duty = run("--format csv extrapolate --cost 3.34 --window 1800 --scale 0.08");
  EXPECT_TRUE(has(duty.out, ",384.77\n")) << duty.out;
}

TEST_F(CliTest, BreakevenDutyFraction) {
  const auto r = run("--format csv breakeven --cost 3.34 --window 1800 --bare-cost 176.66");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(has(r.out, "active-fraction,0.0367,")) << r.out;
}

TEST_F(CliTest, NoCrossingIsAnAnswer) {
  const auto r = run("breakeven --cost 0.01 --window 1800 --bare-cost 176.66");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(has(r.err, "no break-even")) << r.err;
  EXPECT_TRUE(has(r.out, "cloud-cheaper")) << r.out;
}

TEST_F(CliTest, ConfigFileAndFlagPrecedence) {
  {
    std::ofstream cfg(tmp("cfg.json"));
    cfg << R"({"policy": {"utilization": 0.25}})";
  }
  ASSERT_EQ(run("simulate " + topo() + " --pattern constant --rate 1.3e7 --duration 300 --out " + tmp("t.csv")).status,
            0);
  const std::string base = "--format csv dimension --trace " + tmp("t.csv") + " " + topo();
  EXPECT_TRUE(has(run(base).out, "required_capacity_bps,208000000\n"));
  EXPECT_TRUE(has(run("--config " + tmp("cfg.json") + " " + base).out, "required_capacity_bps,416000000\n"));
  EXPECT_TRUE(has(run("--config " + tmp("cfg.json") + " " + base + " --utilization 0.8").out,
                  "required_capacity_bps,130000000\n"));
}

TEST_F(CliTest, IngestKubecost) {
  const auto r = run("--format csv cost --kubecost '" + fixture("kubecost_30min.json") + "'");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(has(r.out, "4809.60")) << r.out;
}

}  // namespace
}  // namespace netcost
