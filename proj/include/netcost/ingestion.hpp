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
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include <json.hpp>

#include "netcost/error.hpp"
#include "netcost/ipv4.hpp"
#include "netcost/traffic_model.hpp"

namespace netcost {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

/// Splits on '\n' and drops a trailing '\r' from each line.
inline std::vector<std::string_view> split_lines(std::string_view doc) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= doc.size()) {
    auto nl = doc.find('\n', pos);
    if (nl == std::string_view::npos) nl = doc.size();
    auto line = doc.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

inline bool parse_double(std::string_view text, double& out) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Prometheus text exposition format

struct CounterSample {
  std::string name;
  std::map<std::string, std::string> labels;
  double value = 0;      // cumulative count
  double timestamp = 0;  // seconds

  friend bool operator==(const CounterSample&, const CounterSample&) = default;
};

struct PrometheusParseOptions {
  double scrape_time = 0;  // seconds; used for lines without a timestamp
  bool lenient = false;    // skip malformed lines instead of failing
};

struct PrometheusParseResult {
  std::vector<CounterSample> samples;
  std::vector<std::string> warnings;
};

namespace detail {

class PromLineParser {
 public:
  PromLineParser(std::string_view line, double scrape_time) : line_(line), scrape_time_(scrape_time) {}

  CounterSample parse() {
    CounterSample s;
    skip_blanks();
    s.name = metric_name();
    // The label set may be separated from the name by blanks; the value may not.
    const auto after_name = pos_;
    skip_blanks();
    if (peek() == '{') {
      s.labels = labels();
    } else {
      pos_ = after_name;
    }
    if (!at_blank()) throw std::runtime_error("expected whitespace before value");
    skip_blanks();
    const auto value_text = token();
    if (!parse_double(value_text, s.value)) {
      throw std::runtime_error("bad sample value '" + std::string(value_text) + "'");
    }
    if (std::isnan(s.value) || s.value < 0) throw std::runtime_error("counter value must be >= 0");
    skip_blanks();
    if (pos_ < line_.size()) {
      const auto ts_text = token();
      std::int64_t ms = 0;
      auto [ptr, ec] = std::from_chars(ts_text.data(), ts_text.data() + ts_text.size(), ms);
      if (ec != std::errc() || ptr != ts_text.data() + ts_text.size()) {
        throw std::runtime_error("bad timestamp '" + std::string(ts_text) + "'");
      }
      s.timestamp = static_cast<double>(ms) / 1000.0;
      skip_blanks();
      if (pos_ < line_.size()) throw std::runtime_error("trailing characters after timestamp");
    } else {
      s.timestamp = scrape_time_;
    }
    return s;
  }

 private:
  char peek() const { return pos_ < line_.size() ? line_[pos_] : '\0'; }
  bool at_blank() const { return peek() == ' ' || peek() == '\t'; }
  void skip_blanks() {
    while (at_blank()) ++pos_;
  }

  std::string_view token() {
    const auto begin = pos_;
    while (pos_ < line_.size() && !at_blank()) ++pos_;
    return line_.substr(begin, pos_ - begin);
  }

  static bool name_start(char c, bool colon) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || (colon && c == ':');
  }
  static bool name_char(char c, bool colon) { return name_start(c, colon) || (c >= '0' && c <= '9'); }

  std::string identifier(bool colon, const char* what) {
    const auto begin = pos_;
    if (!name_start(peek(), colon)) throw std::runtime_error(std::string("expected ") + what);
    while (pos_ < line_.size() && name_char(line_[pos_], colon)) ++pos_;
    return std::string(line_.substr(begin, pos_ - begin));
  }

  std::string metric_name() { return identifier(true, "metric name"); }

  std::map<std::string, std::string> labels() {
    std::map<std::string, std::string> out;
    ++pos_;  // '{'
    skip_blanks();
    while (peek() != '}') {
      auto key = identifier(false, "label name");
      skip_blanks();
      if (peek() != '=') throw std::runtime_error("expected '=' after label " + key);
      ++pos_;
      skip_blanks();
      if (peek() != '"') throw std::runtime_error("expected quoted value for label " + key);
      ++pos_;
      std::string value;
      for (;;) {
        if (pos_ >= line_.size()) throw std::runtime_error("unterminated label value");
        const char c = line_[pos_++];
        if (c == '"') break;
        if (c == '\\') {
          if (pos_ >= line_.size()) throw std::runtime_error("dangling escape in label value");
          const char e = line_[pos_++];
          if (e == 'n') {
            value += '\n';
          } else if (e == '\\' || e == '"') {
            value += e;
          } else {
            throw std::runtime_error(std::string("invalid escape \\") + e);
          }
        } else {
          value += c;
        }
      }
      if (!out.emplace(key, std::move(value)).second) throw std::runtime_error("duplicate label " + key);
      skip_blanks();
      if (peek() == ',') {
        ++pos_;
        skip_blanks();
      } else if (peek() != '}') {
        throw std::runtime_error("expected ',' or '}' in label set");
      }
    }
    ++pos_;  // '}'
    return out;
  }

  std::string_view line_;
  std::size_t pos_ = 0;
  double scrape_time_;
};

}  // namespace detail

/// Parses data lines `name{labels} value [timestamp_ms]`; `#` lines (HELP,
/// TYPE, free comments) and blank lines are ignored. Timestamps come out in
/// seconds.
inline PrometheusParseResult parse_prometheus_text(std::string_view document,
                                                   const PrometheusParseOptions& options = {}) {
  PrometheusParseResult result;
  const auto lines = detail::split_lines(document);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto body = detail::trim(lines[i]);
    if (body.empty() || body.front() == '#') continue;
    try {
      result.samples.push_back(detail::PromLineParser(body, options.scrape_time).parse());
    } catch (const std::runtime_error& e) {
      const std::string msg = "line " + std::to_string(i + 1) + ": " + e.what();
      if (!options.lenient) fail(ErrorCode::ParseError, msg);
      result.warnings.push_back(msg);
    }
  }
  return result;
}

/// Identity of a time series: metric name plus its sorted label set.
using SeriesKey = std::pair<std::string, std::map<std::string, std::string>>;

/// Splits a scrape dump into per-series sample lists ordered by time.
inline std::map<SeriesKey, std::vector<CounterSample>> group_series(const std::vector<CounterSample>& samples) {
  std::map<SeriesKey, std::vector<CounterSample>> out;
  for (const auto& s : samples) out[{s.name, s.labels}].push_back(s);
  for (auto& [key, list] : out) {
    std::stable_sort(list.begin(), list.end(),
                     [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
  }
  return out;
}

enum class CounterReset {
  RestartFromZero,  // after a drop, the new value is the increase
  SkipInterval,     // the interval containing the drop contributes nothing
};

/// Per-interval rates of a cumulative counter. The result's bucket width is
/// the mean scrape interval; each rate uses its own interval.
inline RateSeries counters_to_rates(const std::vector<CounterSample>& samples,
                                    CounterReset reset = CounterReset::RestartFromZero) {
  if (samples.size() < 2) fail(ErrorCode::InsufficientSamples, "need at least two counter samples");
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].name != samples[0].name || samples[i].labels != samples[0].labels) {
      fail(ErrorCode::SchemaError, "samples belong to more than one series");
    }
    if (!(samples[i].timestamp > samples[i - 1].timestamp)) {
      fail(ErrorCode::NonMonotonicTime, "timestamps must be strictly increasing (sample " + std::to_string(i) + ")");
    }
  }
  std::vector<double> rates;
  rates.reserve(samples.size() - 1);
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const double dt = samples[i + 1].timestamp - samples[i].timestamp;
    double delta = samples[i + 1].value - samples[i].value;
    if (delta < 0) delta = reset == CounterReset::RestartFromZero ? samples[i + 1].value : 0.0;
    rates.push_back(delta / dt);
  }
  const double width = (samples.back().timestamp - samples.front().timestamp) /
                       static_cast<double>(samples.size() - 1);
  return RateSeries(samples.front().timestamp, width, std::move(rates));
}

// ---------------------------------------------------------------------------
// Flow CSV: header `timestamp,src,dst,bytes`, one flow per row.

inline constexpr std::string_view kFlowCsvHeader = "timestamp,src,dst,bytes";

inline Trace parse_flow_csv(std::string_view document) {
  if (document.substr(0, 3) == "\xEF\xBB\xBF") document.remove_prefix(3);
  const auto lines = detail::split_lines(document);
  if (lines.empty() || detail::trim(lines[0]) != kFlowCsvHeader) {
    fail(ErrorCode::ParseError, "row 1: expected header '" + std::string(kFlowCsvHeader) + "'");
  }
  std::vector<FlowRecord> records;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string row = "row " + std::to_string(i + 1) + ": ";
    if (detail::trim(lines[i]).empty()) continue;
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    for (;;) {
      const auto comma = lines[i].find(',', pos);
      fields.push_back(detail::trim(lines[i].substr(pos, comma - pos)));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (fields.size() != 4) fail(ErrorCode::ParseError, row + "expected 4 fields, got " + std::to_string(fields.size()));

    FlowRecord r;
    if (!detail::parse_double(fields[0], r.timestamp) || !std::isfinite(r.timestamp)) {
      fail(ErrorCode::ParseError, row + "bad timestamp '" + std::string(fields[0]) + "'");
    }
    try {
      r.src = Ipv4Address::parse(fields[1]);
      r.dst = Ipv4Address::parse(fields[2]);
    } catch (const Error& e) {
      fail(ErrorCode::ParseError, row + e.what());
    }
    if (!fields[3].empty() && fields[3].front() == '-') {
      fail(ErrorCode::NegativeBytes, row + "byte count " + std::string(fields[3]) + " is negative");
    }
    auto [ptr, ec] = std::from_chars(fields[3].data(), fields[3].data() + fields[3].size(), r.bytes);
    if (fields[3].empty() || ec != std::errc() || ptr != fields[3].data() + fields[3].size()) {
      fail(ErrorCode::ParseError, row + "bad byte count '" + std::string(fields[3]) + "'");
    }
    records.push_back(r);
  }
  return Trace::from_records(std::move(records));
}

/// Writes records in trace order with shortest round-trip timestamps.
inline std::string serialize_flow_csv(const Trace& trace) {
  std::string out(kFlowCsvHeader);
  out += '\n';
  for (const auto& r : trace.records()) {
    out += detail::format_double(r.timestamp);
    out += ',';
    out += r.src.to_string();
    out += ',';
    out += r.dst.to_string();
    out += ',';
    out += std::to_string(r.bytes);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Kubecost allocation subset (see docs/kubecost-schema.md)

inline constexpr int kKubecostSchemaVersion = 1;

struct KubecostAllocation {
  ClassTotals totals;
  double network_cost = 0;
  double window_start = 0;
  double window_end = 0;

  double window_duration() const { return window_end - window_start; }
};

namespace detail {

/// RFC 3339 UTC or offset timestamp, e.g. 2023-05-01T16:49:00Z, to Unix seconds.
inline double parse_rfc3339(const std::string& text) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0;
  double sec = 0;
  int consumed = 0;
  if (std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%lf%n", &y, &mo, &d, &h, &mi, &sec, &consumed) != 6) {
    throw std::runtime_error("not an RFC 3339 timestamp: '" + text + "'");
  }
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(mo)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec < 0 || sec >= 61) {
    throw std::runtime_error("out-of-range date in '" + text + "'");
  }
  const std::string_view zone = std::string_view(text).substr(static_cast<std::size_t>(consumed));
  double offset = 0;
  if (zone == "Z" || zone == "z") {
    offset = 0;
  } else {
    int oh = 0, om = 0;
    char sign = 0;
    if (zone.size() != 6 || std::sscanf(std::string(zone).c_str(), "%c%2d:%2d", &sign, &oh, &om) != 3 ||
        (sign != '+' && sign != '-')) {
      throw std::runtime_error("bad UTC offset in '" + text + "'");
    }
    offset = (sign == '+' ? 1 : -1) * (oh * 3600.0 + om * 60.0);
  }
  const auto days = std::chrono::sys_days(ymd).time_since_epoch().count();
  return static_cast<double>(days) * 86400.0 + h * 3600.0 + mi * 60.0 + sec - offset;
}

inline const nlohmann::json& require(const nlohmann::json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) fail(ErrorCode::SchemaError, "missing field '" + path + key + "'");
  return obj.at(key);
}

inline double require_number(const nlohmann::json& obj, const std::string& key, const std::string& path) {
  const auto& v = require(obj, key, path);
  if (!v.is_number()) fail(ErrorCode::SchemaError, "field '" + path + key + "' must be a number");
  return v.get<double>();
}

inline double parse_time_field(const nlohmann::json& obj, const std::string& key, const std::string& path) {
  const auto& v = require(obj, key, path);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return parse_rfc3339(v.get<std::string>());
    } catch (const std::runtime_error& e) {
      fail(ErrorCode::SchemaError, "field '" + path + key + "': " + e.what());
    }
  }
  fail(ErrorCode::SchemaError, "field '" + path + key + "' must be a number or RFC 3339 string");
}

}  // namespace detail

/// Per-class transfer bytes, summed network cost and window of a Kubecost
/// allocation export.
inline KubecostAllocation parse_kubecost_allocation(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::SchemaError, "top level must be an object");

  const auto& version = detail::require(doc, "schemaVersion", "");
  if (!version.is_number_integer() || version.get<int>() != kKubecostSchemaVersion) {
    fail(ErrorCode::SchemaError, "unsupported schemaVersion " + version.dump());
  }

  KubecostAllocation out;
  const auto& window = detail::require(doc, "window", "");
  out.window_start = detail::parse_time_field(window, "start", "window.");
  out.window_end = detail::parse_time_field(window, "end", "window.");
  if (!(out.window_end > out.window_start)) fail(ErrorCode::SchemaError, "window.end must be after window.start");

  const auto& allocations = detail::require(doc, "allocations", "");
  if (!allocations.is_array()) fail(ErrorCode::SchemaError, "field 'allocations' must be an array");

  static const std::pair<const char*, TrafficClass> kByteFields[] = {
      {"inZone", TrafficClass::InZone},
      {"crossZone", TrafficClass::CrossZone},
      {"crossRegion", TrafficClass::CrossRegion},
      {"internetEgress", TrafficClass::InternetEgress},
      {"internetIngress", TrafficClass::InternetIngress},
  };

  for (std::size_t i = 0; i < allocations.size(); ++i) {
    const std::string path = "allocations[" + std::to_string(i) + "].";
    const auto& alloc = allocations[i];
    const auto& name = detail::require(alloc, "name", path);
    if (!name.is_string()) fail(ErrorCode::SchemaError, "field '" + path + "name' must be a string");
    const double cost = detail::require_number(alloc, "networkCost", path);
    if (!(cost >= 0)) fail(ErrorCode::SchemaError, "field '" + path + "networkCost' must be >= 0");
    out.network_cost += cost;

    if (!alloc.contains("networkTransferBytes")) continue;
    const auto& transfer = alloc.at("networkTransferBytes");
    if (!transfer.is_object()) fail(ErrorCode::SchemaError, "field '" + path + "networkTransferBytes' must be an object");
    for (const auto& [key, cls] : kByteFields) {
      if (!transfer.contains(key)) continue;
      const auto& v = transfer.at(key);
      const std::string field = path + "networkTransferBytes." + key;
      if (v.is_number_integer() && v.get<std::int64_t>() < 0) {
        fail(ErrorCode::NegativeBytes, "field '" + field + "' is negative");
      }
      if (!v.is_number_unsigned()) fail(ErrorCode::SchemaError, "field '" + field + "' must be a non-negative integer");
      out.totals[cls] += v.get<std::uint64_t>();
    }
  }
  return out;
}

}  // namespace netcost
