#include "h3lab/engine/protocol.hpp"

#include <vector>

#include "h3lab/common/error.hpp"
#include "h3lab/common/text.hpp"

namespace h3lab::engine {

std::string_view to_string(HttpVersion v) noexcept {
  switch (v) {
    case HttpVersion::h1_1: return "h1.1";
    case HttpVersion::h2: return "h2";
    case HttpVersion::h3: return "h3";
  }
  return "?";
}

std::optional<HttpVersion> parse_http_version(std::string_view text) noexcept {
  if (text == "h1.1" || text == "http/1.1") return HttpVersion::h1_1;
  if (text == "h2") return HttpVersion::h2;
  if (text == "h3") return HttpVersion::h3;
  return std::nullopt;
}

std::string Capabilities::to_string() const {
  std::vector<std::string> parts;
  for (auto v : {HttpVersion::h1_1, HttpVersion::h2, HttpVersion::h3}) {
    if (has(v)) parts.emplace_back(engine::to_string(v));
  }
  return join(parts, ",");
}

Capabilities Capabilities::parse(std::string_view text) {
  Capabilities caps;
  if (text.empty()) return caps;
  for (const auto& part : split(text, ',')) {
    const auto v = parse_http_version(part);
    if (!v) throw ParameterError("unknown HTTP version '" + part + "'");
    caps.add(*v);
  }
  return caps;
}

}  // namespace h3lab::engine
