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
#include <cmath>
#include <cstddef>
#include <string_view>
#include <vector>

#include "netcost/error.hpp"
#include "netcost/pricing.hpp"
#include "netcost/traffic_model.hpp"

namespace netcost {

/// Which traffic the provisioned link has to carry.
enum class LinkScope {
  Egress,  // internet egress plus cross-zone/cross-region traffic leaving the node
  All,     // every class, including ingress and in-zone
};

constexpr std::string_view to_string(LinkScope s) { return s == LinkScope::Egress ? "egress" : "all"; }

constexpr bool carried_by_link(TrafficClass c, LinkScope scope) {
  if (scope == LinkScope::All) return true;
  return c == TrafficClass::InternetEgress || c == TrafficClass::CrossZone ||
         c == TrafficClass::CrossRegion;
}

struct DimensioningPolicy {
  double utilization_target = 0.5;  // fraction of link capacity allowed at peak
  double peak_window = 60;          // seconds averaged when looking for the peak
  double bucket_width = 1;          // seconds per rate sample
  LinkScope link = LinkScope::Egress;

  void validate() const {
    if (!(utilization_target > 0 && utilization_target <= 1)) {
      fail(ErrorCode::InvalidPolicy, "utilization target must be in (0, 1]");
    }
    if (!(peak_window > 0) || !std::isfinite(peak_window)) {
      fail(ErrorCode::InvalidPolicy, "peak window must be > 0");
    }
    if (!(bucket_width > 0) || !std::isfinite(bucket_width)) {
      fail(ErrorCode::InvalidBucket, "bucket width must be > 0");
    }
  }
};

/// Highest mean rate over any run of floor(window / bucket_width) adjacent
/// buckets, in bits/s. A window wider than the series averages all of it.
inline double peak_rate(const RateSeries& series, double window) {
  if (series.empty()) fail(ErrorCode::EmptySeries, "cannot take the peak of an empty series");
  const double width = series.bucket_width();
  if (!(window >= width * (1 - 1e-9)) || !std::isfinite(window)) {
    fail(ErrorCode::InvalidWindow, "peak window must be at least one bucket wide");
  }
  const auto& rates = series.rates();
  const std::size_t k =
      std::min(rates.size(), std::max<std::size_t>(1, static_cast<std::size_t>(window / width + 1e-9)));

  std::vector<long double> prefix(rates.size() + 1, 0.0L);
  for (std::size_t i = 0; i < rates.size(); ++i) prefix[i + 1] = prefix[i] + rates[i];
  long double best = 0;
  for (std::size_t i = k; i <= rates.size(); ++i) best = std::max(best, prefix[i] - prefix[i - k]);
  return static_cast<double>(best / static_cast<long double>(k)) * 8.0;
}

inline double required_capacity(double peak_bps, const DimensioningPolicy& policy) {
  policy.validate();
  if (!(peak_bps >= 0) || !std::isfinite(peak_bps)) fail(ErrorCode::InvalidPolicy, "peak must be >= 0");
  return peak_bps / policy.utilization_target;
}

struct DimensionResult {
  double peak = 0;      // bits/s
  double capacity = 0;  // bits/s
  double monthly_cost = 0;
};

/// Size a bare-metal link for the trace: rate series of the link-carried
/// traffic, sliding-window peak, utilization headroom, then capacity price.
inline DimensionResult dimension(const Trace& trace, const Topology& topology,
                                 const DimensioningPolicy& policy, const CapacityPricing& pricing) {
  policy.validate();
  pricing.validate();
  DimensionResult out;
  if (trace.has_window()) {
    std::size_t index = 0;
    const Trace carried = trace.filtered([&](const FlowRecord& r) {
      try {
        ++index;
        return carried_by_link(classify_flow(r, topology), policy.link);
      } catch (const Error& e) {
        throw Error(e.code(), "record " + std::to_string(index - 1) + ": " + e.what());
      }
    });
    const RateSeries series = rate_series(carried, policy.bucket_width);
    if (!series.empty()) {
      out.peak = peak_rate(series, std::max(policy.peak_window, policy.bucket_width));
    }
  }
  out.capacity = required_capacity(out.peak, policy);
  out.monthly_cost = bare_metal_monthly_cost(out.capacity, pricing);
  return out;
}

}  // namespace netcost
