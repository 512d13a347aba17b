#include "h3lab/engine/client_profile.hpp"

#include <array>

namespace h3lab::engine {

namespace {

constexpr std::array<ClientProfile, 5> kProfiles{{
    {ClientKind::chrome, "chrome", 1250, 520, 40, 8, 32, 32, 8, 1, 0, 32, 20, 64240,
     "Mozilla/5.0 (Windows NT 10.0; Win64; x64) AppleWebKit/537.36 Chrome/101.0"},
    {ClientKind::firefox, "firefox", 1357, 604, 0, 6, 34, 32, 8, 2, 1, 40, 32, 64240,
     "Mozilla/5.0 (X11; Ubuntu; Linux x86_64; rv:100.0) Gecko/20100101 Firefox/100.0"},
    {ClientKind::curl, "curl", 1200, 310, 0, 8, 62, 32, 18, 4, 1, 40, 32, 64240,
     "curl/7.83.0"},
    {ClientKind::aioquic, "aioquic", 1280, 270, 0, 6, 0, 0, 8, 2, 7, 40, 32, 64240,
     "aioquic/0.9.20"},
    {ClientKind::scapy, "scapy", 0, 0, 0, 0, 0, 0, 0, 0, 0, 20, 20, 8192, ""},
}};

}  // namespace

const ClientProfile& client_profile(ClientKind kind) noexcept {
  for (const auto& p : kProfiles) {
    if (p.kind == kind) return p;
  }
  return kProfiles.back();
}

std::optional<ClientKind> parse_client_kind(std::string_view name) noexcept {
  for (const auto& p : kProfiles) {
    if (p.name == name) return p.kind;
  }
  return std::nullopt;
}

}  // namespace h3lab::engine
