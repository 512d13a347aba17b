#include "h3lab/common/net.hpp"

#include <charconv>

#include "h3lab/common/error.hpp"

namespace h3lab {

std::optional<Ipv4Address> Ipv4Address::parse(std::string_view text) {
  Ipv4Address out;
  std::size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    if (i > 0) {
      if (pos >= text.size() || text[pos] != '.') return std::nullopt;
      ++pos;
    }
    unsigned value = 0;
    const char* begin = text.data() + pos;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr == begin || value > 255 || ptr - begin > 3) {
      return std::nullopt;
    }
    out.octets[i] = static_cast<std::uint8_t>(value);
    pos = static_cast<std::size_t>(ptr - text.data());
  }
  if (pos != text.size()) return std::nullopt;
  return out;
}

std::string Ipv4Address::to_string() const {
  return std::to_string(octets[0]) + "." + std::to_string(octets[1]) + "." +
         std::to_string(octets[2]) + "." + std::to_string(octets[3]);
}

std::uint32_t Ipv4Address::to_uint() const noexcept {
  return (std::uint32_t{octets[0]} << 24) | (std::uint32_t{octets[1]} << 16) |
         (std::uint32_t{octets[2]} << 8) | std::uint32_t{octets[3]};
}

Endpoint Endpoint::parse(std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == text.size()) {
    throw ParameterError("expected host:port, got '" + std::string(text) + "'");
  }
  unsigned port = 0;
  const auto digits = text.substr(colon + 1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), port);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || port == 0 ||
      port > 65535) {
    throw ParameterError("invalid port in '" + std::string(text) + "'");
  }
  return Endpoint{std::string(text.substr(0, colon)), static_cast<std::uint16_t>(port)};
}

std::string Endpoint::to_string() const { return host + ":" + std::to_string(port); }

}  // namespace h3lab
