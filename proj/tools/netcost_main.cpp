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

// netcost: classify Kubernetes traffic, price it under usage-based and
// capacity-based models, and compare the two.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "netcost/netcost.hpp"

namespace {

using namespace netcost;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitConfig = 3;

struct GlobalOptions {
  std::string config_path;
  std::string format = "table";
  std::string out_path;
};

struct TopologyOptions {
  std::string topology_path;
};

struct PricingOptions {
  std::string usage_profile;
  std::optional<double> in_zone, cross_zone, cross_region, egress, ingress;
  std::optional<std::string> lb_zone, backend_zone;
  std::optional<double> lb_hourly, lb_per_gb;
  bool no_ingress_hop = false;
  std::string capacity_profile;
  std::optional<double> base_price, included_capacity, increment_size, increment_price;
};

struct PolicyOptions {
  std::optional<double> utilization, peak_window, bucket;
  std::optional<std::string> link;
};

struct PatternOptions {
  std::string kind;
  std::optional<double> rate, active_fraction, mean, amplitude, period, baseline, burst_rate, burst_probability;
  std::optional<std::uint64_t> seed;
  std::optional<double> duration, bucket, egress_share;
};

/// Everything a command needs to resolve inputs with flag > config > default
/// precedence, plus where to write.
class Context {
 public:
  explicit Context(const GlobalOptions& g) : globals_(g) {
    std::string path = g.config_path;
    if (path.empty()) {
      if (const char* env = std::getenv("NETCOST_CONFIG")) path = env;
    }
    if (!path.empty()) {
      config_ = load_config(path);
      config_origin_ = path;
    }
    if (g.format == "csv") {
      format_ = OutputFormat::Csv;
    } else if (g.format != "table") {
      fail(ErrorCode::InvalidPolicy, "--format must be 'table' or 'csv'");
    }
  }

  OutputFormat format() const { return format_; }

  const Json* section(const char* name) const {
    if (!config_.is_object() || !config_.contains(name)) return nullptr;
    return &config_.at(name);
  }

  const Json* subsection(const char* outer, const char* inner) const {
    const Json* s = section(outer);
    if (!s || !s->is_object() || !s->contains(inner)) return nullptr;
    return &s->at(inner);
  }

  Topology topology(const TopologyOptions& opts) {
    if (!opts.topology_path.empty()) {
      const Json doc = load_config(opts.topology_path);
      provenance("topology", opts.topology_path);
      if (doc.contains("topology")) return topology_from_json(doc.at("topology"));
      return topology_from_json(doc);
    }
    if (const Json* s = section("topology")) {
      provenance("topology", config_origin_);
      return topology_from_json(*s);
    }
    fail(ErrorCode::SchemaError, "no topology given (use --topology or a config document with a topology section)");
  }

  UsagePricing usage(const PricingOptions& o) {
    UsagePricing p = UsagePricing::aws_like();
    std::string source = "aws-like (built-in)";
    if (const Json* s = subsection("pricing", "usage")) {
      p = usage_from_json(*s);
      source = "config " + config_origin_;
    }
    if (!o.usage_profile.empty()) {
      p = usage_profile(o.usage_profile);
      source = o.usage_profile;
    }
    const std::pair<const std::optional<double>*, TrafficClass> overrides[] = {
        {&o.in_zone, TrafficClass::InZone},
        {&o.cross_zone, TrafficClass::CrossZone},
        {&o.cross_region, TrafficClass::CrossRegion},
        {&o.egress, TrafficClass::InternetEgress},
        {&o.ingress, TrafficClass::InternetIngress}};
    for (const auto& [value, cls] : overrides) {
      if (*value) {
        p.set_rate(cls, **value);
        source += ", " + std::string(to_string(cls)) + " rate from flag";
      }
    }
    provenance("usage pricing", source);
    return p;
  }

  std::optional<LoadBalancerConfig> load_balancer(const PricingOptions& o) {
    std::optional<LoadBalancerConfig> lb;
    if (const Json* s = subsection("pricing", "load_balancer")) lb = load_balancer_from_json(*s);
    if (o.lb_zone || o.backend_zone || o.lb_hourly || o.lb_per_gb) {
      if (!lb) lb = LoadBalancerConfig{};
      if (o.lb_zone) lb->lb_zone = *o.lb_zone;
      if (o.backend_zone) lb->backend_zone = *o.backend_zone;
      if (o.lb_hourly) lb->hourly_rate = *o.lb_hourly;
      if (o.lb_per_gb) lb->per_gb_processed_rate = *o.lb_per_gb;
    }
    if (lb && o.no_ingress_hop) lb->charge_ingress_hop = false;
    if (lb) {
      lb->validate();
      provenance("load balancer", "zone " + lb->lb_zone + " -> backend " + lb->backend_zone +
                                      ", hourly " + format_fixed(lb->hourly_rate, 4) + ", per GB " +
                                      format_fixed(lb->per_gb_processed_rate, 4));
    }
    return lb;
  }

  CapacityPricing capacity(const PricingOptions& o) {
    CapacityPricing p = CapacityPricing::ovh_advance2();
    std::string source = "ovh-advance2 (built-in)";
    if (const Json* s = subsection("pricing", "capacity")) {
      p = capacity_from_json(*s);
      source = "config " + config_origin_;
    }
    if (!o.capacity_profile.empty()) {
      p = capacity_profile(o.capacity_profile);
      source = o.capacity_profile;
    }
    if (o.base_price) p.base_monthly_price = *o.base_price;
    if (o.included_capacity) p.included_capacity = *o.included_capacity;
    if (o.increment_size) p.increment_size = *o.increment_size;
    if (o.increment_price) p.increment_price = *o.increment_price;
    p.validate();
    provenance("capacity pricing", source + ": base " + format_currency(p.base_monthly_price) + " for " +
                                       format_fixed(p.included_capacity, 0) + " b/s, +" +
                                       format_currency(p.increment_price) + " per " +
                                       format_fixed(p.increment_size, 0) + " b/s");
    return p;
  }

  DimensioningPolicy policy(const PolicyOptions& o) {
    DimensioningPolicy p;
    if (const Json* s = section("policy")) p = policy_from_json(*s);
    if (o.utilization) p.utilization_target = *o.utilization;
    if (o.peak_window) p.peak_window = *o.peak_window;
    if (o.bucket) p.bucket_width = *o.bucket;
    if (o.link) p.link = link_scope_from_string(*o.link);
    p.validate();
    provenance("policy", "utilization " + format_fixed(p.utilization_target, 2) + ", peak window " +
                             format_fixed(p.peak_window, 0) + " s, bucket " + detail::format_double(p.bucket_width) +
                             " s, link " + std::string(to_string(p.link)));
    return p;
  }

  TrafficPattern pattern(const PatternOptions& o) {
    std::optional<TrafficPattern> base;
    if (const Json* s = section("pattern")) base = pattern_from_json(*s);
    std::string kind = o.kind;
    if (kind.empty()) {
      if (!base) fail(ErrorCode::InvalidPattern, "no pattern given (use --pattern or a config pattern section)");
      kind = std::string(pattern_name(*base));
    }
    if (!base || pattern_name(*base) != kind) {
      Json stub = {{"kind", kind}};
      base = pattern_from_json(stub);
    }
    TrafficPattern p = *base;
    std::visit(
        [&](auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, pattern::Constant>) {
            if (o.rate) v.rate = *o.rate;
          } else if constexpr (std::is_same_v<T, pattern::DutyCycle>) {
            if (o.rate) v.rate = *o.rate;
            if (o.active_fraction) v.active_fraction = *o.active_fraction;
          } else if constexpr (std::is_same_v<T, pattern::Diurnal>) {
            if (o.mean) v.mean = *o.mean;
            if (o.amplitude) v.amplitude = *o.amplitude;
            if (o.period) v.period = *o.period;
          } else {
            if (o.baseline) v.baseline = *o.baseline;
            if (o.burst_rate) v.burst_rate = *o.burst_rate;
            if (o.burst_probability) v.burst_probability = *o.burst_probability;
            if (o.seed) v.seed = *o.seed;
          }
        },
        p);
    validate(p);
    provenance("pattern", describe(p));
    return p;
  }

  SimulationSettings simulation(const PatternOptions& o) {
    SimulationSettings sim;
    if (const Json* s = section("simulation")) sim = simulation_from_json(*s);
    if (o.duration) sim.duration = *o.duration;
    if (o.bucket) sim.bucket = *o.bucket;
    if (o.egress_share) sim.egress_share = *o.egress_share;
    provenance("simulation", "duration " + detail::format_double(sim.duration) + " s, bucket " +
                                 detail::format_double(sim.bucket) + " s, egress share " +
                                 detail::format_double(sim.egress_share));
    return sim;
  }

  void provenance(const std::string& key, const std::string& value) { provenance_.emplace_back(key, value); }

  /// Writes provenance then the body. Provenance is a comment block in table
  /// mode and goes to stderr in CSV mode so the CSV stays plot-ready.
  void emit(const std::string& body, bool body_is_data = false) {
    std::string head;
    for (const auto& [k, v] : provenance_) head += "# " + k + ": " + v + "\n";
    const bool split = format_ == OutputFormat::Csv || body_is_data;
    std::string text = split ? body : head + body;
    if (split) std::cerr << head;
    if (globals_.out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(globals_.out_path, std::ios::binary);
      if (!out) fail(ErrorCode::ParseError, "cannot write '" + globals_.out_path + "'");
      out << text;
    }
  }

  static std::string describe(const TrafficPattern& p) {
    using detail::format_double;
    return std::visit(
        [](const auto& v) -> std::string {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, pattern::Constant>) {
            return "constant rate " + format_double(v.rate) + " B/s";
          } else if constexpr (std::is_same_v<T, pattern::DutyCycle>) {
            return "duty-cycle rate " + format_double(v.rate) + " B/s, active fraction " +
                   format_double(v.active_fraction);
          } else if constexpr (std::is_same_v<T, pattern::Diurnal>) {
            return "diurnal mean " + format_double(v.mean) + " B/s, amplitude " + format_double(v.amplitude) +
                   " B/s, period " + format_double(v.period) + " s";
          } else {
            return "bursty baseline " + format_double(v.baseline) + " B/s, burst " + format_double(v.burst_rate) +
                   " B/s, probability " + format_double(v.burst_probability) + ", seed " + std::to_string(v.seed);
          }
        },
        p);
  }

 private:
  GlobalOptions globals_;
  Json config_;
  std::string config_origin_;
  OutputFormat format_ = OutputFormat::Table;
  std::vector<std::pair<std::string, std::string>> provenance_;
};

std::string percent(double part, double whole) { return whole > 0 ? format_fixed(100.0 * part / whole, 2) : "0.00"; }

// ---------------------------------------------------------------------------
// Subcommand bodies

struct TraceInput {
  std::string trace_path;
  TopologyOptions topology;
};

Trace load_trace(Context& ctx, const std::string& path) {
  ctx.provenance("trace", path);
  return parse_flow_csv(read_file(path));
}

void run_classify(Context& ctx, const TraceInput& in) {
  const Trace trace = load_trace(ctx, in.trace_path);
  const Topology topology = ctx.topology(in.topology);
  const ClassTotals totals = aggregate_trace(trace, topology);
  TextTable table({"class", "bytes", "share_pct"});
  for (auto c : kAllTrafficClasses) {
    table.add_row({std::string(to_string(c)), std::to_string(totals[c]), percent(double(totals[c]), double(totals.total()))});
  }
  table.add_row({"total", std::to_string(totals.total()), totals.total() ? "100.00" : "0.00"});
  ctx.emit(table.render(ctx.format()));
}

struct CostInput {
  TraceInput trace;
  std::optional<double> window;
  std::string kubecost_path;
  PricingOptions pricing;
};

void run_cost(Context& ctx, const CostInput& in) {
  ClassTotals totals;
  double window = 0;
  std::optional<double> measured;
  if (!in.kubecost_path.empty()) {
    ctx.provenance("kubecost export", in.kubecost_path);
    const auto alloc = parse_kubecost_allocation(read_file(in.kubecost_path));
    totals = alloc.totals;
    window = alloc.window_duration();
    measured = alloc.network_cost;
  } else {
    const Trace trace = load_trace(ctx, in.trace.trace_path);
    totals = aggregate_trace(trace, ctx.topology(in.trace.topology));
    window = in.window.value_or(trace.has_window() ? trace.duration() : 0);
  }
  const UsagePricing usage = ctx.usage(in.pricing);
  const auto lb = ctx.load_balancer(in.pricing);
  const CostBreakdown cost = cloud_cost(totals, usage, lb, window);

  TextTable table({"item", "bytes", "cost"});
  for (auto c : kAllTrafficClasses) {
    table.add_row({std::string(to_string(c)), std::to_string(totals[c]), format_currency(cost[c])});
  }
  table.add_row({"load-balancer", std::to_string(lb ? totals.internet_bytes() : 0), format_currency(cost.lb_cost)});
  table.add_row({"total", std::to_string(totals.total()), format_currency(cost.total)});
  if (measured) table.add_row({"measured", "", format_currency(*measured)});
  if (window > 0) {
    table.add_row({"monthly-extrapolated", "", format_currency(extrapolate_monthly(cost.total, window, 1.0))});
  }
  ctx.provenance("window", detail::format_double(window) + " s");
  ctx.emit(table.render(ctx.format()));
}

struct DimensionInput {
  TraceInput trace;
  PricingOptions pricing;
  PolicyOptions policy;
};

void run_dimension(Context& ctx, const DimensionInput& in) {
  const Trace trace = load_trace(ctx, in.trace.trace_path);
  const Topology topology = ctx.topology(in.trace.topology);
  const DimensioningPolicy policy = ctx.policy(in.policy);
  const CapacityPricing capacity = ctx.capacity(in.pricing);
  const DimensionResult r = dimension(trace, topology, policy, capacity);
  TextTable table({"quantity", "value"});
  table.add_row({"peak_bps", format_fixed(r.peak, 0)});
  table.add_row({"required_capacity_bps", format_fixed(r.capacity, 0)});
  table.add_row({"monthly_cost", format_currency(r.monthly_cost)});
  ctx.emit(table.render(ctx.format()));
}

struct SimulateInput {
  TopologyOptions topology;
  PatternOptions pattern;
};

void run_simulate(Context& ctx, const SimulateInput& in) {
  const Topology topology = ctx.topology(in.topology);
  const TrafficPattern p = ctx.pattern(in.pattern);
  const SimulationSettings sim = ctx.simulation(in.pattern);
  const Trace trace = generate_trace(p, sim.duration, sim.bucket, topology, sim.egress_share);
  ctx.provenance("total bytes", std::to_string(trace.total_bytes()));
  ctx.emit(serialize_flow_csv(trace), /*body_is_data=*/true);
}

struct ExtrapolateInput {
  double cost = 0;
  double window = 0;
  double scale = 1.0;
};

void run_extrapolate(Context& ctx, const ExtrapolateInput& in) {
  const double monthly = extrapolate_monthly(in.cost, in.window, in.scale);
  ctx.provenance("month", "30 days (2592000 s)");
  TextTable table({"window_cost", "window_seconds", "scale", "monthly_cost"});
  table.add_row({format_currency(in.cost), detail::format_double(in.window), detail::format_double(in.scale),
                 format_currency(monthly)});
  ctx.emit(table.render(ctx.format()));
}

struct BreakevenInput {
  std::optional<double> cost, window, bare_cost, capacity_bps;
  std::string family;
  std::string sweep;
  std::optional<double> lo, hi;
  double tolerance = 0.005;
  TopologyOptions topology;
  PricingOptions pricing;
  PolicyOptions policy;
  PatternOptions pattern;
};

SweepParameter sweep_from_string(const std::string& s) {
  if (s == "rate") return SweepParameter::Rate;
  if (s == "active-fraction") return SweepParameter::ActiveFraction;
  if (s == "egress-share") return SweepParameter::EgressShare;
  fail(ErrorCode::InvalidRange, "--sweep must be rate, active-fraction or egress-share");
}

void run_breakeven(Context& ctx, BreakevenInput in) {
  BreakEvenOptions options;
  options.cost_tolerance = in.tolerance;
  BreakEvenResult result;
  std::string parameter;

  if (in.cost) {
    // Measured window cost: sweep the duty fraction of the month.
    if (!in.window) fail(ErrorCode::InvalidDuration, "--window is required with --cost");
    if (!in.family.empty() && in.family != "duty-cycle") {
      fail(ErrorCode::InvalidPattern, "a measured cost can only be swept as a duty-cycle family");
    }
    double bare = 0;
    if (in.bare_cost) {
      bare = *in.bare_cost;
      ctx.provenance("bare-metal monthly", format_currency(bare) + " (flag)");
    } else {
      bare = bare_metal_monthly_cost(in.capacity_bps.value_or(0), ctx.capacity(in.pricing));
      ctx.provenance("bare-metal capacity", format_fixed(in.capacity_bps.value_or(0), 0) + " b/s");
    }
    ctx.provenance("measured window", format_currency(*in.cost) + " over " + detail::format_double(*in.window) + " s");
    parameter = "active-fraction";
    result = break_even_duty_cycle(*in.cost, *in.window, bare, in.lo.value_or(0), in.hi.value_or(1), options);
  } else {
    if (!in.family.empty()) in.pattern.kind = in.family;
    const TrafficPattern family = ctx.pattern(in.pattern);
    const SweepParameter sweep = sweep_from_string(
        in.sweep.empty() ? (std::holds_alternative<pattern::DutyCycle>(family) ? "active-fraction" : "rate")
                         : in.sweep);
    parameter = std::string(to_string(sweep));
    if (!in.lo || !in.hi) {
      if (sweep == SweepParameter::Rate) fail(ErrorCode::InvalidRange, "--lo and --hi are required for a rate sweep");
    }
    const double lo = in.lo.value_or(sweep == SweepParameter::ActiveFraction ? 1e-6 : 0.0);
    const double hi = in.hi.value_or(1.0);
    const Topology topology = ctx.topology(in.topology);
    const SimulationSettings sim = ctx.simulation(in.pattern);
    const UsagePricing usage = ctx.usage(in.pricing);
    const auto lb = ctx.load_balancer(in.pricing);
    const CapacityPricing capacity = ctx.capacity(in.pricing);
    const DimensioningPolicy policy = ctx.policy(in.policy);
    result = break_even(family, sweep, lo, hi, sim, topology, usage, lb, capacity, policy, options);
  }
  ctx.provenance("sweep", parameter);

  TextTable table({"parameter", "break_even", "cloud_monthly", "bare_metal_monthly", "result"});
  if (const auto* c = std::get_if<Crossing>(&result)) {
    table.add_row({parameter, format_fixed(c->parameter, 4), format_currency(c->cloud_monthly),
                   format_currency(c->bare_monthly), "crossing"});
  } else {
    const auto& nc = std::get<NoCrossing>(result);
    std::cerr << "netcost: no break-even in range: " << to_string(nc.cheaper) << " everywhere\n";
    table.add_row({parameter, "n/a", "", "", std::string(to_string(nc.cheaper))});
  }
  ctx.emit(table.render(ctx.format()));
}

struct CompareInput {
  TraceInput trace;
  std::string kubecost_path;
  std::optional<double> cost, window, capacity_bps;
  PricingOptions pricing;
  PolicyOptions policy;
};

void run_compare(Context& ctx, const CompareInput& in) {
  ComparisonReport report;
  const CapacityPricing capacity = ctx.capacity(in.pricing);
  const bool from_trace = !in.trace.trace_path.empty();

  std::optional<Trace> trace;
  std::optional<Topology> topology;
  if (from_trace) {
    trace = load_trace(ctx, in.trace.trace_path);
    topology = ctx.topology(in.trace.topology);
  }

  if (in.cost || !in.kubecost_path.empty()) {
    // Measured window cost; the trace (if any) only sizes the bare-metal link.
    CostBreakdown window_cost;
    double window = 0;
    if (!in.kubecost_path.empty()) {
      ctx.provenance("kubecost export", in.kubecost_path);
      const auto alloc = parse_kubecost_allocation(read_file(in.kubecost_path));
      window_cost.total = alloc.network_cost;
      window = alloc.window_duration();
    } else {
      if (!in.window) fail(ErrorCode::InvalidDuration, "--window is required with --cost");
      window_cost.total = *in.cost;
      window = *in.window;
    }
    ctx.provenance("measured window", format_currency(window_cost.total) + " over " + detail::format_double(window) + " s");
    DimensionResult bare;
    if (trace) {
      bare = dimension(*trace, *topology, ctx.policy(in.policy), capacity);
    } else {
      bare.capacity = in.capacity_bps.value_or(0);
      bare.monthly_cost = bare_metal_monthly_cost(bare.capacity, capacity);
      ctx.provenance("bare-metal capacity", format_fixed(bare.capacity, 0) + " b/s");
    }
    report = compare_window_cost(window_cost, window, bare);
  } else {
    if (!trace) fail(ErrorCode::SchemaError, "compare needs --trace, --cost or --kubecost");
    if (in.window) {
      const ClassTotals totals = aggregate_trace(*trace, *topology);
      const CostBreakdown cost = cloud_cost(totals, ctx.usage(in.pricing), ctx.load_balancer(in.pricing), *in.window);
      report = compare_window_cost(cost, *in.window, dimension(*trace, *topology, ctx.policy(in.policy), capacity));
      report.totals = totals;
    } else {
      report = compare(*trace, *topology, ctx.usage(in.pricing), ctx.load_balancer(in.pricing), capacity,
                       ctx.policy(in.policy));
    }
  }

  TextTable table({"item", "bytes", "monthly_cost"});
  if (report.totals) {
    for (auto c : kAllTrafficClasses) {
      table.add_row({std::string(to_string(c)), std::to_string((*report.totals)[c]),
                     format_currency(report.monthly_per_class[index_of(c)])});
    }
    table.add_row({"load-balancer", "", format_currency(report.monthly_lb)});
  }
  table.add_row({"cloud", "", format_currency(report.cloud_monthly)});
  table.add_row({"bare-metal", "", format_currency(report.bare_metal.monthly_cost)});
  table.add_row({"bare-metal-capacity-bps", "", format_fixed(report.bare_metal.capacity, 0)});
  table.add_row({"ratio", "", report.ratio ? format_ratio(*report.ratio) : "n/a"});
  table.add_row({"cloud-over-bare-metal-pct", "",
                 report.percent_increase() ? format_fixed(*report.percent_increase(), 2) : "n/a"});
  ctx.provenance("window", detail::format_double(report.window_duration) + " s, month = 2592000 s");
  ctx.emit(table.render(ctx.format()));
}

struct IngestInput {
  std::string prometheus_path, flows_path, kubecost_path;
  std::string metric;
  double scrape_time = 0;
  bool lenient = false;
  bool skip_resets = false;
};

void run_ingest(Context& ctx, const IngestInput& in) {
  const int sources = !in.prometheus_path.empty() + !in.flows_path.empty() + !in.kubecost_path.empty();
  if (sources != 1) fail(ErrorCode::SchemaError, "ingest takes exactly one of --prometheus, --flows, --kubecost");

  if (!in.prometheus_path.empty()) {
    ctx.provenance("prometheus scrape", in.prometheus_path);
    const auto parsed = parse_prometheus_text(read_file(in.prometheus_path), {in.scrape_time, in.lenient});
    for (const auto& w : parsed.warnings) std::cerr << "netcost: warning: " << w << '\n';
    TextTable table({"series", "start", "rate_bytes_per_s"});
    const auto reset = in.skip_resets ? CounterReset::SkipInterval : CounterReset::RestartFromZero;
    for (const auto& [key, samples] : group_series(parsed.samples)) {
      if (!in.metric.empty() && key.first != in.metric) continue;
      std::string id = key.first;
      if (!key.second.empty()) {
        id += '{';
        bool first = true;
        for (const auto& [k, v] : key.second) {
          id += (first ? "" : ",") + k + "=\"" + v + "\"";
          first = false;
        }
        id += '}';
      }
      if (samples.size() < 2) {
        std::cerr << "netcost: warning: series " << id << " has fewer than two samples, skipped\n";
        continue;
      }
      const RateSeries series = counters_to_rates(samples, reset);
      for (std::size_t i = 0; i < series.size(); ++i) {
        table.add_row({id, detail::format_double(series[i].start), format_fixed(series[i].rate, 2)});
      }
    }
    ctx.emit(table.render(ctx.format()));
  } else if (!in.flows_path.empty()) {
    const Trace trace = load_trace(ctx, in.flows_path);
    TextTable table({"quantity", "value"});
    table.add_row({"records", std::to_string(trace.size())});
    table.add_row({"start", trace.has_window() ? detail::format_double(trace.start()) : "n/a"});
    table.add_row({"end", trace.has_window() ? detail::format_double(trace.end()) : "n/a"});
    table.add_row({"total_bytes", std::to_string(trace.total_bytes())});
    ctx.emit(table.render(ctx.format()));
  } else {
    ctx.provenance("kubecost export", in.kubecost_path);
    const auto alloc = parse_kubecost_allocation(read_file(in.kubecost_path));
    TextTable table({"item", "value"});
    for (auto c : kAllTrafficClasses) table.add_row({std::string(to_string(c)) + "_bytes", std::to_string(alloc.totals[c])});
    table.add_row({"network_cost", format_currency(alloc.network_cost)});
    table.add_row({"window_seconds", detail::format_double(alloc.window_duration())});
    table.add_row({"monthly_extrapolated", format_currency(extrapolate_monthly(alloc.network_cost, alloc.window_duration(), 1.0))});
    ctx.emit(table.render(ctx.format()));
  }
}

// ---------------------------------------------------------------------------
// Flag wiring

void add_topology_flags(CLI::App* cmd, TopologyOptions& o) {
  cmd->add_option("--topology", o.topology_path, "Topology document (JSON config or bare topology object)");
}

void add_usage_flags(CLI::App* cmd, PricingOptions& o) {
  cmd->add_option("--usage-profile", o.usage_profile, "Usage pricing profile (aws-like, none)");
  cmd->add_option("--in-zone-rate", o.in_zone, "Per-GB in-zone rate");
  cmd->add_option("--cross-zone-rate", o.cross_zone, "Per-GB cross-zone rate");
  cmd->add_option("--cross-region-rate", o.cross_region, "Per-GB cross-region rate");
  cmd->add_option("--egress-rate", o.egress, "Per-GB internet egress rate");
  cmd->add_option("--ingress-rate", o.ingress, "Per-GB internet ingress rate");
  cmd->add_option("--lb-zone", o.lb_zone, "Zone of the load balancer");
  cmd->add_option("--backend-zone", o.backend_zone, "Zone of the ingress backend pod");
  cmd->add_option("--lb-hourly", o.lb_hourly, "Load balancer hourly charge");
  cmd->add_option("--lb-per-gb", o.lb_per_gb, "Load balancer per-GB processing charge");
  cmd->add_flag("--no-lb-ingress-hop", o.no_ingress_hop, "Do not charge the LB backend hop on ingress bytes");
}

void add_capacity_flags(CLI::App* cmd, PricingOptions& o) {
  cmd->add_option("--capacity-profile", o.capacity_profile, "Capacity pricing profile (ovh-advance2)");
  cmd->add_option("--base-price", o.base_price, "Monthly base price of the link");
  cmd->add_option("--included-capacity", o.included_capacity, "Capacity covered by the base price, bits/s");
  cmd->add_option("--increment-size", o.increment_size, "Capacity increment, bits/s");
  cmd->add_option("--increment-price", o.increment_price, "Monthly price per increment");
}

void add_policy_flags(CLI::App* cmd, PolicyOptions& o) {
  cmd->add_option("--utilization", o.utilization, "Target link utilization at peak, (0, 1]");
  cmd->add_option("--peak-window", o.peak_window, "Averaging window for the peak, seconds");
  cmd->add_option("--bucket", o.bucket, "Rate sample width, seconds");
  cmd->add_option("--link", o.link, "Traffic carried by the link: egress or all");
}

void add_pattern_flags(CLI::App* cmd, PatternOptions& o, bool with_kind) {
  if (with_kind) cmd->add_option("--pattern", o.kind, "constant, duty-cycle, diurnal or bursty");
  cmd->add_option("--rate", o.rate, "Rate in bytes/s (constant, duty-cycle)");
  cmd->add_option("--active-fraction", o.active_fraction, "Active fraction (duty-cycle)");
  cmd->add_option("--mean", o.mean, "Mean rate in bytes/s (diurnal)");
  cmd->add_option("--amplitude", o.amplitude, "Amplitude in bytes/s (diurnal)");
  cmd->add_option("--period", o.period, "Period in seconds (diurnal)");
  cmd->add_option("--baseline", o.baseline, "Baseline rate in bytes/s (bursty)");
  cmd->add_option("--burst-rate", o.burst_rate, "Burst rate in bytes/s (bursty)");
  cmd->add_option("--burst-probability", o.burst_probability, "Per-bucket burst probability (bursty)");
  cmd->add_option("--seed", o.seed, "Random seed (bursty)");
  cmd->add_option("--duration", o.duration, "Simulated duration, seconds");
  cmd->add_option("--sim-bucket", o.bucket, "Simulation bucket width, seconds");
  cmd->add_option("--egress-share", o.egress_share, "Fraction of bytes flowing cluster -> internet");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kubernetes network cost toolkit: usage-based vs capacity-based pricing"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions globals;
  app.add_option("--config", globals.config_path, "Config document (falls back to $NETCOST_CONFIG)");
  app.add_option("--format", globals.format, "Output format: table or csv")->check(CLI::IsMember({"table", "csv"}));
  app.add_option("--out", globals.out_path, "Write output to PATH instead of stdout");

  TraceInput classify_in;
  auto* classify = app.add_subcommand("classify", "Per-class byte totals of a flow trace");
  classify->add_option("--trace", classify_in.trace_path, "Flow CSV")->required();
  add_topology_flags(classify, classify_in.topology);

  CostInput cost_in;
  auto* cost = app.add_subcommand("cost", "Usage-based cost of a trace or Kubecost export");
  auto* cost_trace = cost->add_option("--trace", cost_in.trace.trace_path, "Flow CSV");
  auto* cost_kube = cost->add_option("--kubecost", cost_in.kubecost_path, "Kubecost allocation JSON");
  cost_trace->excludes(cost_kube);
  cost->add_option("--window", cost_in.window, "Observation window for a trace, seconds (default: last - first timestamp)");
  add_topology_flags(cost, cost_in.trace.topology);
  add_usage_flags(cost, cost_in.pricing);

  DimensionInput dim_in;
  auto* dim = app.add_subcommand("dimension", "Bare-metal link size and monthly price for a trace");
  dim->add_option("--trace", dim_in.trace.trace_path, "Flow CSV")->required();
  add_topology_flags(dim, dim_in.trace.topology);
  add_policy_flags(dim, dim_in.policy);
  add_capacity_flags(dim, dim_in.pricing);

  SimulateInput sim_in;
  auto* sim = app.add_subcommand("simulate", "Generate a synthetic flow CSV from a traffic pattern");
  add_topology_flags(sim, sim_in.topology);
  add_pattern_flags(sim, sim_in.pattern, true);

  ExtrapolateInput ext_in;
  auto* ext = app.add_subcommand("extrapolate", "Scale a measured window cost to a 30-day month");
  ext->add_option("--cost", ext_in.cost, "Cost measured over the window")->required();
  ext->add_option("--window", ext_in.window, "Window length, seconds")->required();
  ext->add_option("--scale", ext_in.scale, "Fraction of the month at measured intensity")->capture_default_str();

  BreakevenInput be_in;
  auto* be = app.add_subcommand("breakeven", "Parameter value where cloud and bare-metal monthly costs meet");
  be->add_option("--cost", be_in.cost, "Measured window cost (sweeps the duty fraction)");
  be->add_option("--window", be_in.window, "Window length for --cost, seconds");
  be->add_option("--bare-cost", be_in.bare_cost, "Bare-metal monthly cost for --cost mode");
  be->add_option("--capacity", be_in.capacity_bps, "Provisioned capacity for --cost mode, bits/s");
  be->add_option("--family", be_in.family, "Pattern family: constant, duty-cycle, diurnal, bursty");
  be->add_option("--sweep", be_in.sweep, "Swept parameter: rate, active-fraction, egress-share");
  be->add_option("--lo", be_in.lo, "Lower end of the sweep");
  be->add_option("--hi", be_in.hi, "Upper end of the sweep");
  be->add_option("--tolerance", be_in.tolerance, "Cost tolerance of the crossing")->capture_default_str();
  add_topology_flags(be, be_in.topology);
  add_usage_flags(be, be_in.pricing);
  add_capacity_flags(be, be_in.pricing);
  add_policy_flags(be, be_in.policy);
  add_pattern_flags(be, be_in.pattern, false);

  CompareInput cmp_in;
  auto* cmp = app.add_subcommand("compare", "Cloud vs bare-metal monthly network cost");
  cmp->add_option("--trace", cmp_in.trace.trace_path, "Flow CSV");
  cmp->add_option("--kubecost", cmp_in.kubecost_path, "Kubecost allocation JSON (measured cost)");
  cmp->add_option("--cost", cmp_in.cost, "Measured window cost");
  cmp->add_option("--window", cmp_in.window, "Window length for --cost, or the trace observation window, seconds");
  cmp->add_option("--capacity", cmp_in.capacity_bps, "Bare-metal capacity when no trace is given, bits/s");
  add_topology_flags(cmp, cmp_in.trace.topology);
  add_usage_flags(cmp, cmp_in.pricing);
  add_capacity_flags(cmp, cmp_in.pricing);
  add_policy_flags(cmp, cmp_in.policy);

  IngestInput ing_in;
  auto* ing = app.add_subcommand("ingest", "Parse Prometheus scrapes, flow CSV or Kubecost exports");
  ing->add_option("--prometheus", ing_in.prometheus_path, "Prometheus text exposition file");
  ing->add_option("--flows", ing_in.flows_path, "Flow CSV");
  ing->add_option("--kubecost", ing_in.kubecost_path, "Kubecost allocation JSON");
  ing->add_option("--metric", ing_in.metric, "Only this metric name");
  ing->add_option("--scrape-time", ing_in.scrape_time, "Timestamp (s) for samples without one");
  ing->add_flag("--lenient", ing_in.lenient, "Skip malformed lines with a warning");
  ing->add_flag("--skip-resets", ing_in.skip_resets, "Counter resets contribute zero instead of the new value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    Context ctx(globals);
    if (*classify) run_classify(ctx, classify_in);
    else if (*cost) run_cost(ctx, cost_in);
    else if (*dim) run_dimension(ctx, dim_in);
    else if (*sim) run_simulate(ctx, sim_in);
    else if (*ext) run_extrapolate(ctx, ext_in);
    else if (*be) run_breakeven(ctx, be_in);
    else if (*cmp) run_compare(ctx, cmp_in);
    else if (*ing) run_ingest(ctx, ing_in);
  } catch (const Error& e) {
    std::cerr << "netcost: " << e.what() << '\n';
    return is_input_error(e.code()) ? kExitInput : kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "netcost: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}
