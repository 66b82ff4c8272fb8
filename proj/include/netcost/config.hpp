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

#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "netcost/dimensioning.hpp"
#include "netcost/error.hpp"
#include "netcost/pricing.hpp"
#include "netcost/scenarios.hpp"
#include "netcost/traffic_model.hpp"

namespace netcost {

// Config documents are JSON objects with optional sections:
//
//   {
//     "topology":   {"cluster_region": "...", "subnets": [{"cidr", "zone", "region"}], "internet_ips": [...]},
//     "pricing":    {"usage": {...}, "capacity": {...}, "load_balancer": {...}},
//     "policy":     {"utilization", "peak_window", "bucket", "link"},
//     "pattern":    {"kind": "constant" | "duty-cycle" | "diurnal" | "bursty", ...},
//     "simulation": {"duration", "bucket", "egress_share"}
//   }

using Json = nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json parse_config(const std::string& text, const std::string& origin) {
  try {
    Json doc = Json::parse(text);
    if (!doc.is_object()) fail(ErrorCode::SchemaError, origin + ": config document must be a JSON object");
    return doc;
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::ParseError, origin + ": " + e.what());
  }
}

inline Json load_config(const std::string& path) { return parse_config(read_file(path), path); }

namespace detail {

template <class T>
T get_field(const Json& obj, const char* key, const std::string& section, ErrorCode code) {
  try {
    return obj.at(key).get<T>();
  } catch (const Json::exception&) {
    fail(code, "field '" + section + "." + key + "' is missing or has the wrong type");
  }
}

template <class T>
std::optional<T> get_optional(const Json& obj, const char* key, const std::string& section, ErrorCode code) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return get_field<T>(obj, key, section, code);
}

}  // namespace detail

inline Topology topology_from_json(const Json& section) {
  constexpr auto code = ErrorCode::InvalidTopology;
  if (!section.is_object()) fail(code, "topology section must be an object");
  std::vector<SubnetEntry> subnets;
  if (section.contains("subnets")) {
    const auto& list = section.at("subnets");
    if (!list.is_array()) fail(code, "topology.subnets must be an array");
    for (const auto& entry : list) {
      const auto cidr = detail::get_field<std::string>(entry, "cidr", "topology.subnets[]", code);
      SubnetEntry s;
      try {
        s.prefix = Ipv4Prefix::parse(cidr);
      } catch (const Error& e) {
        fail(code, e.what());
      }
      s.zone = detail::get_field<std::string>(entry, "zone", "topology.subnets[]", code);
      s.region = detail::get_field<std::string>(entry, "region", "topology.subnets[]", code);
      subnets.push_back(std::move(s));
    }
  }
  std::vector<Ipv4Address> internet;
  for (const auto& ip : detail::get_optional<std::vector<std::string>>(section, "internet_ips", "topology", code)
                            .value_or(std::vector<std::string>{})) {
    try {
      internet.push_back(Ipv4Address::parse(ip));
    } catch (const Error& e) {
      fail(code, e.what());
    }
  }
  return Topology(std::move(subnets), std::move(internet),
                  detail::get_field<std::string>(section, "cluster_region", "topology", code));
}

inline UsagePricing usage_profile(const std::string& name) {
  if (name == "aws-like") return UsagePricing::aws_like();
  if (name == "none") return UsagePricing{};
  fail(ErrorCode::InvalidPricing, "unknown usage pricing profile '" + name + "'");
}

inline CapacityPricing capacity_profile(const std::string& name) {
  if (name == "ovh-advance2") return CapacityPricing::ovh_advance2();
  fail(ErrorCode::InvalidPricing, "unknown capacity pricing profile '" + name + "'");
}

inline constexpr const char* rate_key(TrafficClass c) {
  switch (c) {
    case TrafficClass::InZone: return "in_zone";
    case TrafficClass::CrossZone: return "cross_zone";
    case TrafficClass::CrossRegion: return "cross_region";
    case TrafficClass::InternetEgress: return "internet_egress";
    case TrafficClass::InternetIngress: return "internet_ingress";
  }
  return "";
}

/// Named profile (default aws-like) with per-class overrides.
inline UsagePricing usage_from_json(const Json& section) {
  constexpr auto code = ErrorCode::InvalidPricing;
  auto pricing = usage_profile(
      detail::get_optional<std::string>(section, "profile", "pricing.usage", code).value_or("aws-like"));
  for (auto c : kAllTrafficClasses) {
    if (auto rate = detail::get_optional<double>(section, rate_key(c), "pricing.usage", code)) {
      pricing.set_rate(c, *rate);
    }
  }
  if (auto cur = detail::get_optional<std::string>(section, "currency", "pricing.usage", code)) pricing.currency = *cur;
  return pricing;
}

inline CapacityPricing capacity_from_json(const Json& section) {
  constexpr auto code = ErrorCode::InvalidPricing;
  auto pricing = capacity_profile(
      detail::get_optional<std::string>(section, "profile", "pricing.capacity", code).value_or("ovh-advance2"));
  auto set = [&](const char* key, double& field) {
    if (auto v = detail::get_optional<double>(section, key, "pricing.capacity", code)) field = *v;
  };
  set("base_monthly_price", pricing.base_monthly_price);
  set("included_capacity", pricing.included_capacity);
  set("increment_size", pricing.increment_size);
  set("increment_price", pricing.increment_price);
  pricing.validate();
  return pricing;
}

inline LoadBalancerConfig load_balancer_from_json(const Json& section) {
  constexpr auto code = ErrorCode::InvalidPricing;
  LoadBalancerConfig lb;
  lb.lb_zone = detail::get_field<std::string>(section, "lb_zone", "pricing.load_balancer", code);
  lb.backend_zone = detail::get_field<std::string>(section, "backend_zone", "pricing.load_balancer", code);
  lb.hourly_rate = detail::get_optional<double>(section, "hourly_rate", "pricing.load_balancer", code).value_or(0);
  lb.per_gb_processed_rate =
      detail::get_optional<double>(section, "per_gb_processed_rate", "pricing.load_balancer", code).value_or(0);
  lb.charge_ingress_hop =
      detail::get_optional<bool>(section, "charge_ingress_hop", "pricing.load_balancer", code).value_or(true);
  lb.validate();
  return lb;
}

inline LinkScope link_scope_from_string(const std::string& s) {
  if (s == "egress") return LinkScope::Egress;
  if (s == "all") return LinkScope::All;
  fail(ErrorCode::InvalidPolicy, "link scope must be 'egress' or 'all', got '" + s + "'");
}

inline DimensioningPolicy policy_from_json(const Json& section) {
  constexpr auto code = ErrorCode::InvalidPolicy;
  DimensioningPolicy policy;
  if (auto v = detail::get_optional<double>(section, "utilization", "policy", code)) policy.utilization_target = *v;
  if (auto v = detail::get_optional<double>(section, "peak_window", "policy", code)) policy.peak_window = *v;
  if (auto v = detail::get_optional<double>(section, "bucket", "policy", code)) policy.bucket_width = *v;
  if (auto v = detail::get_optional<std::string>(section, "link", "policy", code)) policy.link = link_scope_from_string(*v);
  policy.validate();
  return policy;
}

inline TrafficPattern pattern_from_json(const Json& section) {
  constexpr auto code = ErrorCode::InvalidPattern;
  const auto kind = detail::get_field<std::string>(section, "kind", "pattern", code);
  auto num = [&](const char* key, double fallback) {
    return detail::get_optional<double>(section, key, "pattern", code).value_or(fallback);
  };
  TrafficPattern p;
  if (kind == "constant") {
    p = pattern::Constant{num("rate", 0)};
  } else if (kind == "duty-cycle") {
    p = pattern::DutyCycle{num("rate", 0), num("active_fraction", 1)};
  } else if (kind == "diurnal") {
    p = pattern::Diurnal{num("mean", 0), num("amplitude", 0), num("period", 86400)};
  } else if (kind == "bursty") {
    p = pattern::Bursty{num("baseline", 0), num("burst_rate", 0), num("burst_probability", 0),
                        detail::get_optional<std::uint64_t>(section, "seed", "pattern", code).value_or(0)};
  } else {
    fail(code, "unknown pattern kind '" + kind + "'");
  }
  validate(p);
  return p;
}

inline SimulationSettings simulation_from_json(const Json& section) {
  constexpr auto code = ErrorCode::InvalidPattern;
  SimulationSettings sim;
  if (auto v = detail::get_optional<double>(section, "duration", "simulation", code)) sim.duration = *v;
  if (auto v = detail::get_optional<double>(section, "bucket", "simulation", code)) sim.bucket = *v;
  if (auto v = detail::get_optional<double>(section, "egress_share", "simulation", code)) sim.egress_share = *v;
  return sim;
}

}  // namespace netcost
