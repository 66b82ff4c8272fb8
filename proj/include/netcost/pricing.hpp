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

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "netcost/error.hpp"
#include "netcost/traffic_model.hpp"

namespace netcost {

/// Billing uses decimal gigabytes. Grafana panels often show GiB; convert
/// before comparing.
inline constexpr double kBytesPerGB = 1e9;

/// Per-GB rate for each traffic class. An unset rate is only an error when
/// the class actually carries bytes.
class UsagePricing {
 public:
  UsagePricing() = default;

  static UsagePricing aws_like() {
    UsagePricing p;
    p.currency = "USD";
    p.set_rate(TrafficClass::InZone, 0.00);
    p.set_rate(TrafficClass::CrossZone, 0.02);
    p.set_rate(TrafficClass::InternetEgress, 0.09);
    p.set_rate(TrafficClass::InternetIngress, 0.00);
    return p;
  }

  void set_rate(TrafficClass c, double per_gb) {
    if (!(per_gb >= 0) || !std::isfinite(per_gb)) {
      fail(ErrorCode::InvalidPricing, std::string(to_string(c)) + " rate must be >= 0");
    }
    rates_[index_of(c)] = per_gb;
  }

  const std::optional<double>& rate(TrafficClass c) const { return rates_[index_of(c)]; }

  /// Every rate multiplied by k (unset rates stay unset).
  UsagePricing scaled(double k) const {
    UsagePricing out = *this;
    for (auto& r : out.rates_) {
      if (r) r = *r * k;
    }
    return out;
  }

  std::string currency = "USD";

 private:
  std::array<std::optional<double>, kAllTrafficClasses.size()> rates_{};
};

/// Managed load balancer in front of the ingress pod. When it sits in a
/// different zone than the backend, internet bytes pay one extra cross-zone
/// hop.
struct LoadBalancerConfig {
  std::string lb_zone;
  std::string backend_zone;
  double hourly_rate = 0;
  double per_gb_processed_rate = 0;
  /// Charge the backend hop for ingress bytes too, not just egress.
  bool charge_ingress_hop = true;

  bool cross_zone() const { return lb_zone != backend_zone; }

  void validate() const {
    if (!(hourly_rate >= 0) || !(per_gb_processed_rate >= 0) || !std::isfinite(hourly_rate) ||
        !std::isfinite(per_gb_processed_rate)) {
      fail(ErrorCode::InvalidPricing, "load balancer rates must be >= 0");
    }
  }
};

/// Provisioned-link pricing: a base price covers `included_capacity`, each
/// started `increment_size` beyond it costs `increment_price` per month.
struct CapacityPricing {
  double base_monthly_price = 0;
  double included_capacity = 0;  // bits/s
  double increment_size = 0;     // bits/s
  double increment_price = 0;
  std::string currency = "USD";

  static CapacityPricing ovh_advance2() { return {176.66, 1e9, 1e9, 147.00, "USD"}; }

  void validate() const {
    if (!(included_capacity > 0) || !(increment_size > 0)) {
      fail(ErrorCode::InvalidPricing, "included capacity and increment size must be > 0");
    }
    if (!(base_monthly_price >= 0) || !(increment_price >= 0) || !std::isfinite(base_monthly_price) ||
        !std::isfinite(increment_price)) {
      fail(ErrorCode::InvalidPricing, "capacity prices must be >= 0");
    }
  }
};

struct CostBreakdown {
  /// Includes the load-balancer backend hop under CrossZone.
  std::array<double, kAllTrafficClasses.size()> per_class{};
  double lb_cost = 0;
  double total = 0;

  double operator[](TrafficClass c) const { return per_class[index_of(c)]; }
};

inline CostBreakdown cloud_cost(const ClassTotals& totals, const UsagePricing& pricing,
                                const std::optional<LoadBalancerConfig>& lb, double duration) {
  auto rate_for = [&](TrafficClass c) {
    const auto& r = pricing.rate(c);
    if (!r) fail(ErrorCode::MissingRate, "no rate configured for " + std::string(to_string(c)) + " traffic");
    return *r;
  };

  CostBreakdown out;
  for (auto c : kAllTrafficClasses) {
    if (totals[c] == 0) continue;
    out.per_class[index_of(c)] = static_cast<double>(totals[c]) / kBytesPerGB * rate_for(c);
  }

  if (lb) {
    lb->validate();
    if (!(duration > 0) || !std::isfinite(duration)) {
      fail(ErrorCode::InvalidDuration, "load balancer pricing needs a positive duration");
    }
    const auto internet = totals.internet_bytes();
    if (lb->cross_zone()) {
      const auto hop_bytes = totals[TrafficClass::InternetEgress] +
                             (lb->charge_ingress_hop ? totals[TrafficClass::InternetIngress] : 0);
      if (hop_bytes > 0) {
        out.per_class[index_of(TrafficClass::CrossZone)] +=
            static_cast<double>(hop_bytes) / kBytesPerGB * rate_for(TrafficClass::CrossZone);
      }
    }
    out.lb_cost = lb->hourly_rate * duration / 3600.0 +
                  lb->per_gb_processed_rate * static_cast<double>(internet) / kBytesPerGB;
  }

  out.total = out.lb_cost;
  for (double v : out.per_class) out.total += v;
  return out;
}

/// Monthly price of a link able to carry `required_capacity` bits/s.
/// Does not depend on how much traffic actually flows.
inline double bare_metal_monthly_cost(double required_capacity, const CapacityPricing& pricing) {
  pricing.validate();
  if (!(required_capacity >= 0) || !std::isfinite(required_capacity)) {
    fail(ErrorCode::InvalidPolicy, "required capacity must be >= 0");
  }
  if (required_capacity <= pricing.included_capacity) return pricing.base_monthly_price;
  double steps = (required_capacity - pricing.included_capacity) / pricing.increment_size;
  // Absorb representation error so 9.0000000000001 increments stay 9.
  const double nearest = std::round(steps);
  steps = std::abs(steps - nearest) < 1e-9 ? nearest : std::ceil(steps);
  return pricing.base_monthly_price + steps * pricing.increment_price;
}

}  // namespace netcost
