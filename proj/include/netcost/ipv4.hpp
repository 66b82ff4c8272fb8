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

#include <arpa/inet.h>

#include <charconv>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "netcost/error.hpp"

namespace netcost {

/// IPv4 address in host byte order.
class Ipv4Address {
 public:
  constexpr Ipv4Address() = default;
  constexpr explicit Ipv4Address(std::uint32_t value) : value_(value) {}

  static Ipv4Address parse(std::string_view text) {
    std::string buf(text);
    in_addr addr{};
    if (buf.empty() || inet_pton(AF_INET, buf.c_str(), &addr) != 1) {
      fail(ErrorCode::InvalidAddress, "not a dotted-quad IPv4 address: '" + buf + "'");
    }
    return Ipv4Address(ntohl(addr.s_addr));
  }

  constexpr std::uint32_t value() const { return value_; }

  std::string to_string() const {
    return std::to_string(value_ >> 24) + '.' + std::to_string((value_ >> 16) & 0xff) + '.' +
           std::to_string((value_ >> 8) & 0xff) + '.' + std::to_string(value_ & 0xff);
  }

  constexpr auto operator<=>(const Ipv4Address&) const = default;

 private:
  std::uint32_t value_ = 0;
};

/// CIDR block such as 10.0.1.0/24. Host bits are cleared on construction.
class Ipv4Prefix {
 public:
  constexpr Ipv4Prefix() = default;
  Ipv4Prefix(Ipv4Address network, int length) : length_(length) {
    if (length < 0 || length > 32) {
      fail(ErrorCode::InvalidAddress, "prefix length out of range: " + std::to_string(length));
    }
    network_ = Ipv4Address(network.value() & mask());
  }

  static Ipv4Prefix parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
      return Ipv4Prefix(Ipv4Address::parse(text), 32);
    }
    const auto len_text = text.substr(slash + 1);
    int length = -1;
    auto [ptr, ec] = std::from_chars(len_text.data(), len_text.data() + len_text.size(), length);
    if (ec != std::errc() || ptr != len_text.data() + len_text.size() || len_text.empty()) {
      fail(ErrorCode::InvalidAddress, "bad prefix length in '" + std::string(text) + "'");
    }
    return Ipv4Prefix(Ipv4Address::parse(text.substr(0, slash)), length);
  }

  constexpr Ipv4Address network() const { return network_; }
  constexpr int length() const { return length_; }

  constexpr std::uint32_t mask() const {
    return length_ == 0 ? 0u : ~std::uint32_t{0} << (32 - length_);
  }

  constexpr bool contains(Ipv4Address addr) const {
    return (addr.value() & mask()) == network_.value();
  }

  /// Two prefixes overlap iff one contains the other's network address.
  constexpr bool overlaps(const Ipv4Prefix& other) const {
    return contains(other.network_) || other.contains(network_);
  }

  /// First usable host address (the network address itself for /31 and /32).
  constexpr Ipv4Address first_host() const {
    return length_ >= 31 ? network_ : Ipv4Address(network_.value() + 1);
  }

  std::string to_string() const { return network_.to_string() + '/' + std::to_string(length_); }

  constexpr auto operator<=>(const Ipv4Prefix&) const = default;

 private:
  Ipv4Address network_;
  int length_ = 32;
};

}  // namespace netcost
