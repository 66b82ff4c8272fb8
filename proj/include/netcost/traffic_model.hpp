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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netcost/error.hpp"
#include "netcost/ipv4.hpp"

namespace netcost {

// ---------------------------------------------------------------------------
// Billing classes

enum class TrafficClass { InZone, CrossZone, CrossRegion, InternetEgress, InternetIngress };

inline constexpr std::array<TrafficClass, 5> kAllTrafficClasses = {
    TrafficClass::InZone, TrafficClass::CrossZone, TrafficClass::CrossRegion,
    TrafficClass::InternetEgress, TrafficClass::InternetIngress};

constexpr std::string_view to_string(TrafficClass c) {
  switch (c) {
    case TrafficClass::InZone: return "in-zone";
    case TrafficClass::CrossZone: return "cross-zone";
    case TrafficClass::CrossRegion: return "cross-region";
    case TrafficClass::InternetEgress: return "internet-egress";
    case TrafficClass::InternetIngress: return "internet-ingress";
  }
  return "unknown";
}

constexpr bool is_internet(TrafficClass c) {
  return c == TrafficClass::InternetEgress || c == TrafficClass::InternetIngress;
}

constexpr std::size_t index_of(TrafficClass c) { return static_cast<std::size_t>(c); }

// ---------------------------------------------------------------------------
// Topology

struct SubnetEntry {
  Ipv4Prefix prefix;
  std::string zone;
  std::string region;
};

/// Where an address lives: a cluster subnet, or the internet.
struct Location {
  const SubnetEntry* subnet = nullptr;  // null means internet

  bool is_internet() const { return subnet == nullptr; }
};

/// Declarative subnet -> zone -> region map. Validated on construction and
/// immutable afterwards.
class Topology {
 public:
  Topology(std::vector<SubnetEntry> subnets, std::vector<Ipv4Address> internet_addresses,
           std::string cluster_region)
      : subnets_(std::move(subnets)),
        internet_(std::move(internet_addresses)),
        cluster_region_(std::move(cluster_region)) {
    validate();
    // Longest prefix first, so the first containing entry is the best match.
    std::stable_sort(subnets_.begin(), subnets_.end(), [](const auto& a, const auto& b) {
      return a.prefix.length() > b.prefix.length();
    });
    std::sort(internet_.begin(), internet_.end());
    internet_.erase(std::unique(internet_.begin(), internet_.end()), internet_.end());
  }

  const std::vector<SubnetEntry>& subnets() const { return subnets_; }
  const std::vector<Ipv4Address>& internet_addresses() const { return internet_; }
  const std::string& cluster_region() const { return cluster_region_; }

  Location resolve(Ipv4Address addr) const {
    if (std::binary_search(internet_.begin(), internet_.end(), addr)) return {};
    for (const auto& s : subnets_) {
      if (s.prefix.contains(addr)) return Location{&s};
    }
    return {};
  }

 private:
  void validate() const {
    if (cluster_region_.empty()) {
      fail(ErrorCode::InvalidTopology, "cluster_region must be set");
    }
    std::map<std::string, std::string> zone_region;
    for (std::size_t i = 0; i < subnets_.size(); ++i) {
      const auto& s = subnets_[i];
      if (s.zone.empty() || s.region.empty()) {
        fail(ErrorCode::InvalidTopology, "subnet " + s.prefix.to_string() + " needs zone and region");
      }
      auto [it, inserted] = zone_region.emplace(s.zone, s.region);
      if (!inserted && it->second != s.region) {
        fail(ErrorCode::InvalidTopology, "zone '" + s.zone + "' mapped to regions '" + it->second +
                                             "' and '" + s.region + "'");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (subnets_[j].prefix == s.prefix) {
          fail(ErrorCode::InvalidTopology, "duplicate subnet prefix " + s.prefix.to_string());
        }
      }
    }
    for (const auto& addr : internet_) {
      for (const auto& s : subnets_) {
        if (s.prefix.contains(addr)) {
          fail(ErrorCode::InvalidTopology, "internet address " + addr.to_string() +
                                               " lies inside subnet " + s.prefix.to_string());
        }
      }
    }
  }

  std::vector<SubnetEntry> subnets_;
  std::vector<Ipv4Address> internet_;
  std::string cluster_region_;
};

// ---------------------------------------------------------------------------
// Flows and traces

struct FlowRecord {
  double timestamp = 0;  // seconds since epoch
  Ipv4Address src;
  Ipv4Address dst;
  std::uint64_t bytes = 0;

  friend bool operator==(const FlowRecord&, const FlowRecord&) = default;
};

/// Time-ordered flow records plus the observation window. A trace built
/// from records alone has no window when empty; asking for one throws.
class Trace {
 public:
  Trace() = default;

  Trace(std::vector<FlowRecord> records, double start, double end) : records_(std::move(records)) {
    if (!std::isfinite(start) || !std::isfinite(end) || end < start) {
      fail(ErrorCode::InvalidDuration, "trace window must satisfy start <= end");
    }
    sort_and_check();
    for (const auto& r : records_) {
      if (r.timestamp < start || r.timestamp > end) {
        fail(ErrorCode::InvalidDuration, "record timestamp outside trace window");
      }
    }
    bounds_ = {start, end};
  }

  /// Window taken from the earliest and latest record.
  static Trace from_records(std::vector<FlowRecord> records) {
    if (records.empty()) return Trace{};
    auto [lo, hi] = std::minmax_element(records.begin(), records.end(),
                                        [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
    const double start = lo->timestamp;
    const double end = hi->timestamp;
    return Trace(std::move(records), start, end);
  }

  const std::vector<FlowRecord>& records() const { return records_; }
  bool empty() const { return records_.empty(); }
  std::size_t size() const { return records_.size(); }
  bool has_window() const { return bounds_.has_value(); }

  double start() const { return window().first; }
  double end() const { return window().second; }
  double duration() const { return end() - start(); }

  std::uint64_t total_bytes() const {
    std::uint64_t sum = 0;
    for (const auto& r : records_) sum += r.bytes;
    return sum;
  }

  /// Same window, only the records satisfying `keep`.
  template <class Pred>
  Trace filtered(Pred&& keep) const {
    Trace out;
    out.bounds_ = bounds_;
    for (const auto& r : records_) {
      if (keep(r)) out.records_.push_back(r);
    }
    return out;
  }

  friend bool operator==(const Trace&, const Trace&) = default;

 private:
  const std::pair<double, double>& window() const {
    if (!bounds_) fail(ErrorCode::EmptyTrace, "trace has no records and no explicit window");
    return *bounds_;
  }

  void sort_and_check() {
    for (const auto& r : records_) {
      if (!std::isfinite(r.timestamp)) fail(ErrorCode::ParseError, "non-finite flow timestamp");
    }
    std::stable_sort(records_.begin(), records_.end(),
                     [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
  }

  std::vector<FlowRecord> records_;
  std::optional<std::pair<double, double>> bounds_;
};

// ---------------------------------------------------------------------------
// Aggregates

class ClassTotals {
 public:
  std::uint64_t& operator[](TrafficClass c) { return bytes_[index_of(c)]; }
  std::uint64_t operator[](TrafficClass c) const { return bytes_[index_of(c)]; }

  std::uint64_t total() const {
    std::uint64_t sum = 0;
    for (auto b : bytes_) sum += b;
    return sum;
  }

  std::uint64_t internet_bytes() const {
    return (*this)[TrafficClass::InternetEgress] + (*this)[TrafficClass::InternetIngress];
  }

  ClassTotals& operator+=(const ClassTotals& other) {
    for (std::size_t i = 0; i < bytes_.size(); ++i) bytes_[i] += other.bytes_[i];
    return *this;
  }
  friend ClassTotals operator+(ClassTotals a, const ClassTotals& b) { return a += b; }
  friend bool operator==(const ClassTotals&, const ClassTotals&) = default;

 private:
  std::array<std::uint64_t, kAllTrafficClasses.size()> bytes_{};
};

struct RateSample {
  double start;
  double rate;  // bytes per second
};

/// Uniform-grid rate series: sample i covers [origin + i*width, origin + (i+1)*width).
class RateSeries {
 public:
  RateSeries() = default;
  RateSeries(double origin, double bucket_width, std::vector<double> rates)
      : origin_(origin), width_(bucket_width), rates_(std::move(rates)) {
    if (!(bucket_width > 0) || !std::isfinite(bucket_width)) {
      fail(ErrorCode::InvalidBucket, "bucket width must be positive");
    }
    for (double r : rates_) {
      if (!(r >= 0) || !std::isfinite(r)) fail(ErrorCode::InvalidBucket, "rates must be finite and >= 0");
    }
  }

  double origin() const { return origin_; }
  double bucket_width() const { return width_; }
  const std::vector<double>& rates() const { return rates_; }
  std::size_t size() const { return rates_.size(); }
  bool empty() const { return rates_.empty(); }

  RateSample operator[](std::size_t i) const {
    return {origin_ + static_cast<double>(i) * width_, rates_[i]};
  }

  double total_bytes() const {
    double sum = 0;
    for (double r : rates_) sum += r * width_;
    return sum;
  }

  double mean_rate() const {
    if (rates_.empty()) return 0;
    double sum = 0;
    for (double r : rates_) sum += r;
    return sum / static_cast<double>(rates_.size());
  }

 private:
  double origin_ = 0;
  double width_ = 1;
  std::vector<double> rates_;
};

// ---------------------------------------------------------------------------
// Operations

/// Billing class of a single flow. Direction comes from which side resolves
/// to the internet.
inline TrafficClass classify_flow(const FlowRecord& flow, const Topology& topology) {
  const Location src = topology.resolve(flow.src);
  const Location dst = topology.resolve(flow.dst);
  if (src.is_internet() && dst.is_internet()) {
    fail(ErrorCode::InvalidTopology, "flow " + flow.src.to_string() + " -> " + flow.dst.to_string() +
                                         " has no cluster endpoint");
  }
  if (dst.is_internet()) return TrafficClass::InternetEgress;
  if (src.is_internet()) return TrafficClass::InternetIngress;
  if (src.subnet->zone == dst.subnet->zone) return TrafficClass::InZone;
  if (src.subnet->region == dst.subnet->region) return TrafficClass::CrossZone;
  return TrafficClass::CrossRegion;
}

inline ClassTotals aggregate_trace(const Trace& trace, const Topology& topology) {
  ClassTotals totals;
  const auto& records = trace.records();
  for (std::size_t i = 0; i < records.size(); ++i) {
    try {
      totals[classify_flow(records[i], topology)] += records[i].bytes;
    } catch (const Error& e) {
      throw Error(e.code(), "record " + std::to_string(i) + ": " + e.what());
    }
  }
  return totals;
}

/// Bytes per bucket divided by the bucket width over [start, end). A record
/// stamped at or past the last boundary (e.g. `end` of a trace whose window
/// came from its own timestamps) gets one more bucket rather than being
/// folded into the previous one.
inline RateSeries rate_series(const Trace& trace, double bucket_width) {
  if (!(bucket_width > 0) || !std::isfinite(bucket_width)) {
    fail(ErrorCode::InvalidBucket, "bucket width must be positive, got " + std::to_string(bucket_width));
  }
  if (!trace.has_window()) return RateSeries(0, bucket_width, {});

  const double start = trace.start();
  auto bucket_of = [&](double t) { return static_cast<std::size_t>(std::floor((t - start) / bucket_width)); };
  std::size_t buckets = static_cast<std::size_t>(std::ceil((trace.end() - start) / bucket_width));
  if (!trace.empty()) buckets = std::max(buckets, bucket_of(trace.records().back().timestamp) + 1);
  buckets = std::max<std::size_t>(buckets, 1);

  std::vector<std::uint64_t> bytes(buckets, 0);
  for (const auto& r : trace.records()) bytes[std::min(bucket_of(r.timestamp), buckets - 1)] += r.bytes;
  std::vector<double> rates(buckets);
  for (std::size_t i = 0; i < buckets; ++i) {
    rates[i] = static_cast<double>(bytes[i]) / bucket_width;
  }
  return RateSeries(start, bucket_width, std::move(rates));
}

}  // namespace netcost
