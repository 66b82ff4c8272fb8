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

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

namespace netcost {

/// Fixed-point decimal text, rounding half to even. A scaled value within
/// 1e-9 of a half counts as a tie, so binary noise such as
/// 4809.599999999999 still prints 4809.60.
inline std::string format_fixed(double value, int decimals) {
  double scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  const bool negative = value < 0;
  const double scaled = std::abs(value) * scale;
  const double floor = std::floor(scaled);
  const double frac = scaled - floor;
  double units = 0;
  if (std::abs(frac - 0.5) < 1e-9) {
    units = std::fmod(floor, 2.0) == 0 ? floor : floor + 1;
  } else {
    units = std::round(scaled);
  }
  const auto whole = static_cast<std::uint64_t>(units);
  const auto divisor = static_cast<std::uint64_t>(scale);
  std::string out = std::to_string(whole / divisor);
  if (decimals > 0) {
    std::string frac_digits = std::to_string(whole % divisor);
    out += '.' + std::string(static_cast<std::size_t>(decimals) - frac_digits.size(), '0') + frac_digits;
  }
  if (negative && units != 0) out.insert(out.begin(), '-');
  return out;
}

/// Truncates toward zero instead of rounding.
inline std::string format_truncated(double value, int decimals) {
  double scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  // 1e-9 slack keeps 2.3 * 100 = 229.99999999999997 from dropping a unit.
  const double units = std::trunc(value * scale + (value < 0 ? -1e-9 : 1e-9));
  return format_fixed(units / scale, decimals);
}

/// Cost ratios print as e.g. "27.22x", truncated so they never overstate.
inline std::string format_ratio(double ratio) { return format_truncated(ratio, 2) + "x"; }

/// Currency amounts: exactly two decimals.
inline std::string format_currency(double value) { return format_fixed(value, 2); }

enum class OutputFormat { Table, Csv };

/// Rows of text cells rendered as an aligned table or as CSV.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row) {
    row.resize(header_.size());
    rows_.push_back(std::move(row));
  }

  std::string render(OutputFormat format) const { return format == OutputFormat::Csv ? csv() : table(); }

 private:
  static std::string csv_cell(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + '"';
  }

  std::string csv() const {
    std::string out;
    auto emit = [&](const std::vector<std::string>& row) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += csv_cell(row[i]);
      }
      out += '\n';
    };
    emit(header_);
    for (const auto& r : rows_) emit(r);
    return out;
  }

  std::string table() const {
    std::vector<std::size_t> width(header_.size());
    for (std::size_t i = 0; i < header_.size(); ++i) width[i] = header_[i].size();
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    std::string out;
    auto emit = [&](const std::vector<std::string>& row) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += "  ";
        // First column left-aligned, the rest are numbers.
        const std::string pad(width[i] - row[i].size(), ' ');
        out += i == 0 ? row[i] + pad : pad + row[i];
      }
      while (!out.empty() && out.back() == ' ') out.pop_back();
      out += '\n';
    };
    emit(header_);
    std::vector<std::string> rule;
    for (auto w : width) rule.emplace_back(w, '-');
    emit(rule);
    for (const auto& r : rows_) emit(r);
    return out;
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace netcost
