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

#include <cstdlib>
#include <fstream>

#include "netcost/config.hpp"
#include "netcost/format.hpp"

namespace netcost {
namespace {

TEST(FormatTest, HalfEven) {
  EXPECT_EQ(format_fixed(0.125, 2), "0.12");
  EXPECT_EQ(format_fixed(0.375, 2), "0.38");
  EXPECT_EQ(format_fixed(2.5, 0), "2");
  EXPECT_EQ(format_fixed(3.5, 0), "4");
  EXPECT_EQ(format_fixed(-1.005, 1), "-1.0");
  EXPECT_EQ(format_fixed(-0.001, 2), "0.00");
  EXPECT_EQ(format_fixed(7, 3), "7.000");
  EXPECT_EQ(format_fixed(0.05, 2), "0.05");
}

TEST(FormatTest, CurrencyAbsorbsBinaryNoise) {
  EXPECT_EQ(format_currency(3.34 * 1440), "4809.60");
  EXPECT_EQ(format_currency(176.66), "176.66");
  EXPECT_EQ(format_currency(0.1 + 0.2), "0.30");
}

TEST(FormatTest, RatioTruncates) {
  EXPECT_EQ(format_ratio(4809.60 / 176.66), "27.22x");
  EXPECT_EQ(format_ratio(2.3), "2.30x");
  EXPECT_EQ(format_ratio(1.999), "1.99x");
  EXPECT_EQ(format_truncated(-1.239, 2), "-1.23");
}

TEST(TextTableTest, AlignedTable) {
  TextTable t({"class", "bytes"});
  t.add_row({"in-zone", "5"});
  t.add_row({"internet-egress", "12345"});
  EXPECT_EQ(t.render(OutputFormat::Table),
            "class            bytes\n"
            "---------------  -----\n"
            "in-zone              5\n"
            "internet-egress  12345\n");
}

TEST(TextTableTest, CsvQuotes) {
  TextTable t({"name", "value"});
  t.add_row({"a,b", "say \"x\""});
  t.add_row({"plain"});
  EXPECT_EQ(t.render(OutputFormat::Csv), "name,value\n\"a,b\",\"say \"\"x\"\"\"\nplain,\n");
}

TEST(ConfigTest, FullDocument) {
  const auto doc = parse_config(R"({
    "topology": {"cluster_region": "r1",
                 "subnets": [{"cidr": "10.0.1.0/24", "zone": "a", "region": "r1"},
                             {"cidr": "10.0.2.0/24", "zone": "b", "region": "r1"}],
                 "internet_ips": ["52.16.0.10"]},
    "pricing": {"usage": {"cross_region": 0.02, "internet_egress": 0.05},
                "capacity": {"base_monthly_price": 100},
                "load_balancer": {"lb_zone": "a", "backend_zone": "b", "hourly_rate": 0.0225}},
    "policy": {"utilization": 0.8, "peak_window": 30, "link": "all"},
    "pattern": {"kind": "bursty", "baseline": 10, "burst_rate": 100, "burst_probability": 0.1, "seed": 7},
    "simulation": {"duration": 600, "egress_share": 0.25}
  })", "inline");

  const auto topo = topology_from_json(doc["topology"]);
  EXPECT_EQ(topo.cluster_region(), "r1");
  EXPECT_EQ(topo.subnets().size(), 2u);

  const auto usage = usage_from_json(doc["pricing"]["usage"]);
  EXPECT_EQ(usage.rate(TrafficClass::CrossRegion), 0.02);
  EXPECT_EQ(usage.rate(TrafficClass::InternetEgress), 0.05);
  EXPECT_EQ(usage.rate(TrafficClass::CrossZone), 0.02);  // profile default kept

  const auto cap = capacity_from_json(doc["pricing"]["capacity"]);
  EXPECT_EQ(cap.base_monthly_price, 100);
  EXPECT_EQ(cap.increment_price, 147);

  const auto lb = load_balancer_from_json(doc["pricing"]["load_balancer"]);
  EXPECT_EQ(lb.hourly_rate, 0.0225);
  EXPECT_TRUE(lb.charge_ingress_hop);

  const auto policy = policy_from_json(doc["policy"]);
  EXPECT_EQ(policy.utilization_target, 0.8);
  EXPECT_EQ(policy.peak_window, 30);
  EXPECT_EQ(policy.bucket_width, 1);
  EXPECT_EQ(policy.link, LinkScope::All);

  const auto p = pattern_from_json(doc["pattern"]);
  ASSERT_TRUE(std::holds_alternative<pattern::Bursty>(p));
  EXPECT_EQ(std::get<pattern::Bursty>(p).seed, 7u);

  const auto sim = simulation_from_json(doc["simulation"]);
  EXPECT_EQ(sim.duration, 600);
  EXPECT_EQ(sim.bucket, 1);
  EXPECT_EQ(sim.egress_share, 0.25);
}

TEST(ConfigTest, Errors) {
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::NonMonotone;  // sentinel: nothing thrown
  };
  EXPECT_EQ(code([] { read_file("/nonexistent/netcost.json"); }), ErrorCode::ParseError);
  EXPECT_EQ(code([] { parse_config("{", "x"); }), ErrorCode::ParseError);
  EXPECT_EQ(code([] { parse_config("[1]", "x"); }), ErrorCode::SchemaError);
  EXPECT_EQ(code([] { topology_from_json(Json::parse(R"({"subnets": []})")); }), ErrorCode::InvalidTopology);
  EXPECT_EQ(code([] { usage_from_json(Json::parse(R"({"profile": "gcp"})")); }), ErrorCode::InvalidPricing);
  EXPECT_EQ(code([] { usage_from_json(Json::parse(R"({"in_zone": -1})")); }), ErrorCode::InvalidPricing);
  EXPECT_EQ(code([] { policy_from_json(Json::parse(R"({"utilization": 0})")); }), ErrorCode::InvalidPolicy);
  EXPECT_EQ(code([] { policy_from_json(Json::parse(R"({"link": "ingress"})")); }), ErrorCode::InvalidPolicy);
  EXPECT_EQ(code([] { pattern_from_json(Json::parse(R"({"kind": "sawtooth"})")); }), ErrorCode::InvalidPattern);
  EXPECT_EQ(code([] { pattern_from_json(Json::parse(R"({"kind": "duty-cycle", "rate": 1, "active_fraction": 2})")); }),
            ErrorCode::InvalidPattern);
}

}  // namespace
}  // namespace netcost
