#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace h3lab {

struct Ipv4Address {
  std::array<std::uint8_t, 4> octets{};

  static std::optional<Ipv4Address> parse(std::string_view text);
  std::string to_string() const;
  std::uint32_t to_uint() const noexcept;

  friend bool operator==(const Ipv4Address&, const Ipv4Address&) = default;
};

/// "host:port" pair. The host is kept as text so live targets may be names.
struct Endpoint {
  std::string host;
  std::uint16_t port = 0;

  /// Throws ParameterError on a missing or invalid port.
  static Endpoint parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

}  // namespace h3lab
