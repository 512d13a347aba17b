#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace h3lab::engine {

enum class HttpVersion : std::uint8_t { h1_1 = 1, h2 = 2, h3 = 4 };

std::string_view to_string(HttpVersion v) noexcept;
std::optional<HttpVersion> parse_http_version(std::string_view text) noexcept;

/// Subset of {h1.1, h2, h3}.
class Capabilities {
 public:
  constexpr Capabilities() = default;
  constexpr Capabilities(std::initializer_list<HttpVersion> versions) {
    for (auto v : versions) bits_ |= static_cast<std::uint8_t>(v);
  }

  constexpr bool has(HttpVersion v) const noexcept {
    return (bits_ & static_cast<std::uint8_t>(v)) != 0;
  }
  constexpr void add(HttpVersion v) noexcept { bits_ |= static_cast<std::uint8_t>(v); }
  constexpr bool empty() const noexcept { return bits_ == 0; }

  /// "h1.1,h2,h3" style, ascending version order; "" when empty.
  std::string to_string() const;
  /// Accepts the to_string() form; throws ParameterError on unknown names.
  static Capabilities parse(std::string_view text);

  static constexpr Capabilities all() noexcept {
    return {HttpVersion::h1_1, HttpVersion::h2, HttpVersion::h3};
  }

  friend constexpr bool operator==(Capabilities, Capabilities) = default;

 private:
  std::uint8_t bits_ = 0;
};

}  // namespace h3lab::engine
