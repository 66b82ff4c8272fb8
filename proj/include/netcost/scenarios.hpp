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
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "netcost/dimensioning.hpp"
#include "netcost/error.hpp"
#include "netcost/pricing.hpp"
#include "netcost/traffic_model.hpp"

namespace netcost {

/// Billing month: 30 days.
inline constexpr double kSecondsPerMonth = 30.0 * 24 * 3600;

// ---------------------------------------------------------------------------
// Traffic patterns (rates in bytes/s)

namespace pattern {

struct Constant {
  double rate = 0;
};

/// Full `rate` for the first `active_fraction` of the period, idle after.
struct DutyCycle {
  double rate = 0;
  double active_fraction = 1;
};

/// mean + amplitude * sin(2*pi*t / period)
struct Diurnal {
  double mean = 0;
  double amplitude = 0;
  double period = 86400;
};

/// Each bucket independently runs at `burst_rate` with probability
/// `burst_probability`, otherwise at `baseline`.
struct Bursty {
  double baseline = 0;
  double burst_rate = 0;
  double burst_probability = 0;
  std::uint64_t seed = 0;
};

}  // namespace pattern

using TrafficPattern = std::variant<pattern::Constant, pattern::DutyCycle, pattern::Diurnal, pattern::Bursty>;

inline std::string_view pattern_name(const TrafficPattern& p) {
  constexpr std::array<std::string_view, 4> names = {"constant", "duty-cycle", "diurnal", "bursty"};
  return names[p.index()];
}

inline void validate(const TrafficPattern& p) {
  auto rate_ok = [](double r) { return r >= 0 && std::isfinite(r); };
  auto bad = [](const std::string& what) { fail(ErrorCode::InvalidPattern, what); };
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, pattern::Constant>) {
          if (!rate_ok(v.rate)) bad("constant rate must be >= 0");
        } else if constexpr (std::is_same_v<T, pattern::DutyCycle>) {
          if (!rate_ok(v.rate)) bad("duty-cycle rate must be >= 0");
          if (!(v.active_fraction > 0 && v.active_fraction <= 1)) bad("active fraction must be in (0, 1]");
        } else if constexpr (std::is_same_v<T, pattern::Diurnal>) {
          if (!rate_ok(v.mean) || !rate_ok(v.amplitude)) bad("diurnal mean and amplitude must be >= 0");
          if (v.amplitude > v.mean) bad("diurnal amplitude must not exceed the mean");
          if (!(v.period > 0) || !std::isfinite(v.period)) bad("diurnal period must be > 0");
        } else {
          if (!rate_ok(v.baseline) || !rate_ok(v.burst_rate)) bad("bursty rates must be >= 0");
          if (!(v.burst_probability >= 0 && v.burst_probability <= 1)) bad("burst probability must be in [0, 1]");
        }
      },
      p);
}

/// Deterministic generator behind Bursty traces: a 64-bit LCG with Knuth's
/// MMIX constants. Each draw advances state = state * a + c (mod 2^64) and
/// returns the top 53 bits as a double in [0, 1).
class Lcg64 {
 public:
  static constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;
  static constexpr std::uint64_t kIncrement = 1442695040888963407ULL;

  explicit Lcg64(std::uint64_t seed) : state_(seed) {}

  double next_uniform() {
    state_ = state_ * kMultiplier + kIncrement;
    return static_cast<double>(state_ >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

namespace detail {

/// Cumulative bytes at each bucket boundary, before quantization.
inline std::vector<double> cumulative_bytes(const TrafficPattern& p, const std::vector<double>& edges) {
  std::vector<double> out(edges.size(), 0.0);
  if (const auto* bursty = std::get_if<pattern::Bursty>(&p)) {
    Lcg64 rng(bursty->seed);
    for (std::size_t i = 1; i < edges.size(); ++i) {
      const double rate = rng.next_uniform() < bursty->burst_probability ? bursty->burst_rate : bursty->baseline;
      out[i] = out[i - 1] + rate * (edges[i] - edges[i - 1]);
    }
    return out;
  }
  const double duration = edges.back();
  auto integral = [&](double t) -> double {
    return std::visit(
        [&](const auto& v) -> double {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, pattern::Constant>) {
            return v.rate * t;
          } else if constexpr (std::is_same_v<T, pattern::DutyCycle>) {
            return v.rate * std::min(t, v.active_fraction * duration);
          } else if constexpr (std::is_same_v<T, pattern::Diurnal>) {
            const double omega = 2 * std::numbers::pi / v.period;
            return v.mean * t + v.amplitude / omega * (1 - std::cos(omega * t));
          } else {
            return 0.0;
          }
        },
        p);
  };
  for (std::size_t i = 0; i < edges.size(); ++i) out[i] = integral(edges[i]);
  return out;
}

inline Ipv4Address cluster_endpoint(const Topology& topology) {
  const auto& subnets = topology.subnets();
  if (subnets.empty()) fail(ErrorCode::InvalidTopology, "topology has no cluster subnets");
  for (const auto& s : subnets) {
    if (s.region == topology.cluster_region()) return s.prefix.first_host();
  }
  return subnets.front().prefix.first_host();
}

inline Ipv4Address internet_endpoint(const Topology& topology) {
  if (!topology.internet_addresses().empty()) return topology.internet_addresses().front();
  for (auto candidate : {"203.0.113.1", "198.51.100.1", "192.0.2.1", "8.8.8.8", "1.1.1.1"}) {
    const auto addr = Ipv4Address::parse(candidate);
    if (topology.resolve(addr).is_internet()) return addr;
  }
  fail(ErrorCode::InvalidTopology, "no internet address available for synthetic traffic");
}

}  // namespace detail

/// Synthetic trace over [0, duration]: per bucket, one cluster->internet flow
/// carrying `egress_share` of the bytes and one internet->cluster flow with
/// the rest. Totals equal the rounded pattern integral exactly.
inline Trace generate_trace(const TrafficPattern& p, double duration, double bucket, const Topology& topology,
                            double egress_share) {
  validate(p);
  if (!(bucket > 0) || !std::isfinite(bucket)) fail(ErrorCode::InvalidBucket, "bucket must be > 0");
  if (!(duration >= bucket) || !std::isfinite(duration)) {
    fail(ErrorCode::InvalidDuration, "duration must be at least one bucket");
  }
  if (!(egress_share >= 0 && egress_share <= 1)) fail(ErrorCode::InvalidPattern, "egress share must be in [0, 1]");

  const auto buckets = static_cast<std::size_t>(std::ceil(duration / bucket - 1e-9));
  std::vector<double> edges(buckets + 1);
  for (std::size_t i = 0; i < buckets; ++i) edges[i] = static_cast<double>(i) * bucket;
  edges[buckets] = duration;

  const auto cumulative = detail::cumulative_bytes(p, edges);
  const Ipv4Address cluster = detail::cluster_endpoint(topology);
  const Ipv4Address internet = detail::internet_endpoint(topology);

  std::vector<FlowRecord> records;
  records.reserve(buckets * 2);
  std::uint64_t prev_total = 0;
  std::uint64_t prev_egress = 0;
  for (std::size_t i = 0; i < buckets; ++i) {
    const auto total = static_cast<std::uint64_t>(std::llround(cumulative[i + 1]));
    const auto egress = static_cast<std::uint64_t>(std::llround(egress_share * static_cast<double>(total)));
    const std::uint64_t bucket_bytes = total - prev_total;
    const std::uint64_t bucket_egress = egress - prev_egress;
    if (egress_share > 0) records.push_back({edges[i], cluster, internet, bucket_egress});
    if (egress_share < 1) records.push_back({edges[i], internet, cluster, bucket_bytes - bucket_egress});
    prev_total = total;
    prev_egress = egress;
  }
  return Trace(std::move(records), 0.0, duration);
}

// ---------------------------------------------------------------------------
// Extrapolation and comparison

/// Scale a measured window cost to a 30-day month. `pattern_scale` is the
/// fraction of the month spent at the measured intensity.
inline double extrapolate_monthly(double window_cost, double window_duration, double pattern_scale) {
  if (!(window_duration > 0) || !std::isfinite(window_duration)) {
    fail(ErrorCode::InvalidDuration, "window duration must be > 0");
  }
  if (!(pattern_scale >= 0 && pattern_scale <= 1)) fail(ErrorCode::InvalidRange, "pattern scale must be in [0, 1]");
  if (!(window_cost >= 0) || !std::isfinite(window_cost)) fail(ErrorCode::InvalidPricing, "window cost must be >= 0");
  return window_cost * (kSecondsPerMonth / window_duration) * pattern_scale;
}

struct ComparisonReport {
  std::optional<ClassTotals> totals;  // absent when built from a measured cost
  CostBreakdown window_cost;
  double window_duration = 0;
  std::array<double, kAllTrafficClasses.size()> monthly_per_class{};
  double monthly_lb = 0;
  double cloud_monthly = 0;
  DimensionResult bare_metal;
  std::optional<double> ratio;  // cloud / bare metal

  /// Percent by which cloud exceeds bare metal, (ratio - 1) * 100.
  std::optional<double> percent_increase() const {
    if (!ratio) return std::nullopt;
    return (*ratio - 1) * 100;
  }
};

inline std::optional<double> cost_ratio(double cloud_monthly, double bare_monthly) {
  if (bare_monthly == 0) return std::nullopt;
  return cloud_monthly / bare_monthly;
}

/// Report from an already-priced window (for instance a Kubecost export).
inline ComparisonReport compare_window_cost(const CostBreakdown& window_cost, double window_duration,
                                            const DimensionResult& bare_metal) {
  ComparisonReport report;
  report.window_cost = window_cost;
  report.window_duration = window_duration;
  for (std::size_t i = 0; i < window_cost.per_class.size(); ++i) {
    report.monthly_per_class[i] = extrapolate_monthly(window_cost.per_class[i], window_duration, 1.0);
  }
  report.monthly_lb = extrapolate_monthly(window_cost.lb_cost, window_duration, 1.0);
  report.cloud_monthly = extrapolate_monthly(window_cost.total, window_duration, 1.0);
  report.bare_metal = bare_metal;
  report.ratio = cost_ratio(report.cloud_monthly, bare_metal.monthly_cost);
  return report;
}

inline ComparisonReport compare(const Trace& trace, const Topology& topology, const UsagePricing& usage,
                                const std::optional<LoadBalancerConfig>& lb, const CapacityPricing& capacity,
                                const DimensioningPolicy& policy) {
  const double window = trace.duration();
  if (!(window > 0)) fail(ErrorCode::InvalidDuration, "trace must span a positive duration to extrapolate");
  const ClassTotals totals = aggregate_trace(trace, topology);
  const CostBreakdown cost = cloud_cost(totals, usage, lb, window);
  auto report = compare_window_cost(cost, window, dimension(trace, topology, policy, capacity));
  report.totals = totals;
  return report;
}

// ---------------------------------------------------------------------------
// Break-even search

struct ScenarioCosts {
  double cloud_monthly = 0;
  double bare_monthly = 0;
};

enum class Cheaper { Cloud, BareMetal };

constexpr std::string_view to_string(Cheaper c) { return c == Cheaper::Cloud ? "cloud-cheaper" : "bare-metal-cheaper"; }

struct Crossing {
  double parameter = 0;
  double cloud_monthly = 0;
  double bare_monthly = 0;
  int iterations = 0;
};

struct NoCrossing {
  Cheaper cheaper = Cheaper::Cloud;
};

using BreakEvenResult = std::variant<Crossing, NoCrossing>;

struct BreakEvenOptions {
  double cost_tolerance = 0.005;        // stop once |cloud - bare| is within this
  double parameter_tolerance = 1e-12;   // or once the bracket is this narrow
  int max_iterations = 200;
  int prescan_points = 16;
};

/// Bisection on cloud(p) - bare(p) over [lo, hi]. A coarse pre-scan finds
/// the bracketing cell and rejects differences that change sign more than
/// once.
inline BreakEvenResult find_break_even(const std::function<ScenarioCosts(double)>& costs, double lo, double hi,
                                       const BreakEvenOptions& options = {}) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) fail(ErrorCode::InvalidRange, "need lo < hi");
  if (options.prescan_points < 2) fail(ErrorCode::InvalidRange, "pre-scan needs at least two points");
  const double tol = options.cost_tolerance;
  auto diff = [&](double p) {
    const auto c = costs(p);
    return c.cloud_monthly - c.bare_monthly;
  };
  auto sign = [&](double f) { return std::abs(f) <= tol ? 0 : (f > 0 ? 1 : -1); };
  auto crossing_at = [&](double p, int iterations) {
    const auto c = costs(p);
    return Crossing{p, c.cloud_monthly, c.bare_monthly, iterations};
  };

  const int n = options.prescan_points;
  std::vector<double> xs(n), fs(n);
  for (int j = 0; j < n; ++j) {
    xs[j] = j == n - 1 ? hi : lo + (hi - lo) * j / (n - 1);
    fs[j] = diff(xs[j]);
  }

  int changes = 0;
  int last_sign = 0;
  int last_index = -1;
  int left = -1;
  int right = -1;
  for (int j = 0; j < n; ++j) {
    const int s = sign(fs[j]);
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign && ++changes == 1) {
      left = last_index;
      right = j;
    }
    last_sign = s;
    last_index = j;
  }
  if (changes > 1) {
    fail(ErrorCode::NonMonotone, "cost difference changes sign " + std::to_string(changes) +
                                     " times across the pre-scan");
  }

  if (changes == 0) {
    for (int j = 0; j < n; ++j) {
      if (sign(fs[j]) == 0) return crossing_at(xs[j], 0);
    }
    return NoCrossing{last_sign > 0 ? Cheaper::BareMetal : Cheaper::Cloud};
  }
  for (int j = left + 1; j < right; ++j) {
    if (sign(fs[j]) == 0) return crossing_at(xs[j], 0);
  }

  double a = xs[left];
  double b = xs[right];
  const int sign_a = sign(fs[left]);
  int iterations = 0;
  double mid = 0.5 * (a + b);
  while (iterations < options.max_iterations) {
    ++iterations;
    mid = 0.5 * (a + b);
    const double f = diff(mid);
    if (sign(f) == 0 || (b - a) < options.parameter_tolerance) break;
    if ((f > 0 ? 1 : -1) == sign_a) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return crossing_at(mid, iterations);
}

enum class SweepParameter { Rate, ActiveFraction, EgressShare };

constexpr std::string_view to_string(SweepParameter s) {
  switch (s) {
    case SweepParameter::Rate: return "rate";
    case SweepParameter::ActiveFraction: return "active-fraction";
    case SweepParameter::EgressShare: return "egress-share";
  }
  return "unknown";
}

/// How a pattern is turned into a trace when pricing it.
struct SimulationSettings {
  double duration = 3600;
  double bucket = 1;
  double egress_share = 1;
};

/// Copy of `p` with the swept parameter set to `value`.
inline TrafficPattern with_parameter(const TrafficPattern& p, SweepParameter sweep, double value) {
  TrafficPattern out = p;
  if (sweep == SweepParameter::Rate) {
    std::visit(
        [&](auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, pattern::Constant> || std::is_same_v<T, pattern::DutyCycle>) {
            v.rate = value;
          } else if constexpr (std::is_same_v<T, pattern::Diurnal>) {
            v.amplitude = v.mean > 0 ? v.amplitude * value / v.mean : 0;
            v.mean = value;
          } else {
            v.burst_rate = value;
          }
        },
        out);
  } else if (sweep == SweepParameter::ActiveFraction) {
    auto* duty = std::get_if<pattern::DutyCycle>(&out);
    if (!duty) fail(ErrorCode::InvalidPattern, "active-fraction can only be swept on a duty-cycle pattern");
    duty->active_fraction = value;
  }
  return out;
}

/// Price one pattern both ways. Cloud cost is the simulated window
/// extrapolated to a month; the bare-metal link of a duty-cycled pattern is
/// sized on its active-period rate.
inline ScenarioCosts evaluate_pattern(const TrafficPattern& p, const SimulationSettings& sim,
                                      const Topology& topology, const UsagePricing& usage,
                                      const std::optional<LoadBalancerConfig>& lb,
                                      const CapacityPricing& capacity, const DimensioningPolicy& policy) {
  const Trace trace = generate_trace(p, sim.duration, sim.bucket, topology, sim.egress_share);
  const CostBreakdown cost = cloud_cost(aggregate_trace(trace, topology), usage, lb, trace.duration());
  ScenarioCosts out;
  out.cloud_monthly = extrapolate_monthly(cost.total, trace.duration(), 1.0);

  if (const auto* duty = std::get_if<pattern::DutyCycle>(&p)) {
    const Trace active =
        generate_trace(pattern::Constant{duty->rate}, sim.duration, sim.bucket, topology, sim.egress_share);
    out.bare_monthly = dimension(active, topology, policy, capacity).monthly_cost;
  } else {
    out.bare_monthly = dimension(trace, topology, policy, capacity).monthly_cost;
  }
  return out;
}

inline BreakEvenResult break_even(const TrafficPattern& family, SweepParameter sweep, double lo, double hi,
                                  const SimulationSettings& sim, const Topology& topology,
                                  const UsagePricing& usage, const std::optional<LoadBalancerConfig>& lb,
                                  const CapacityPricing& capacity, const DimensioningPolicy& policy,
                                  const BreakEvenOptions& options = {}) {
  validate(with_parameter(family, sweep, sweep == SweepParameter::ActiveFraction ? hi : lo));
  auto costs_at = [&](double value) {
    SimulationSettings s = sim;
    TrafficPattern p = family;
    if (sweep == SweepParameter::EgressShare) {
      s.egress_share = value;
    } else {
      p = with_parameter(family, sweep, value);
    }
    return evaluate_pattern(p, s, topology, usage, lb, capacity, policy);
  };
  return find_break_even(costs_at, lo, hi, options);
}

/// Break-even duty fraction for a measured window cost against a fixed
/// bare-metal monthly price.
inline BreakEvenResult break_even_duty_cycle(double window_cost, double window_duration, double bare_monthly,
                                             double lo = 0, double hi = 1, const BreakEvenOptions& options = {}) {
  return find_break_even(
      [&](double d) {
        return ScenarioCosts{extrapolate_monthly(window_cost, window_duration, d), bare_monthly};
      },
      lo, hi, options);
}

}  // namespace netcost
