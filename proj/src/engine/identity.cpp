#include "h3lab/engine/identity.hpp"

namespace h3lab::engine {

std::vector<std::string> AttackerIdentity::all_addresses() const {
  std::vector<std::string> out{attacker};
  out.insert(out.end(), local_bots.begin(), local_bots.end());
  out.insert(out.end(), remote_bots.begin(), remote_bots.end());
  return out;
}

AttackerIdentity default_attacker_identity() {
  AttackerIdentity id;
  id.attacker = "10.13.0.66";
  id.local_bots = {"10.13.0.71", "10.13.0.72", "10.13.0.73"};
  id.remote_bots = {"10.11.0.71", "10.11.0.72", "10.11.0.73", "10.11.0.74",
                    "10.11.0.75", "10.11.0.76", "10.12.0.71", "10.12.0.72",
                    "10.12.0.73"};
  return id;
}

std::string_view to_string(WorkerRole role) noexcept {
  switch (role) {
    case WorkerRole::attacker: return "attacker";
    case WorkerRole::local_bot: return "local-bot";
    case WorkerRole::remote_bot: return "remote-bot";
  }
  return "?";
}

namespace {

struct Host {
  const std::string* address;
  WorkerRole role;
};

std::vector<Host> pool(AttackKind kind, const AttackerIdentity& id) {
  std::vector<Host> hosts;
  const bool with_attacker = kind != AttackKind::QuicFlood;
  const bool with_local = kind == AttackKind::Http3Flood || kind == AttackKind::QuicFlood ||
                          kind == AttackKind::Http3Loris || kind == AttackKind::QuicLoris;
  const bool with_remote = kind == AttackKind::Http3Loris || kind == AttackKind::QuicLoris;
  if (with_attacker) hosts.push_back({&id.attacker, WorkerRole::attacker});
  if (with_local) {
    for (const auto& a : id.local_bots) hosts.push_back({&a, WorkerRole::local_bot});
  }
  if (with_remote) {
    for (const auto& a : id.remote_bots) hosts.push_back({&a, WorkerRole::remote_bot});
  }
  if (hosts.empty()) hosts.push_back({&id.attacker, WorkerRole::attacker});
  return hosts;
}

ClientKind tool_for(AttackKind kind) {
  switch (kind) {
    case AttackKind::Http3TablesStreams:
    case AttackKind::QuicFlood:
    case AttackKind::QuicLoris:
      return ClientKind::aioquic;
    case AttackKind::QuicEnc:
    case AttackKind::Fuzzing:
      return ClientKind::scapy;
    default:
      return ClientKind::curl;
  }
}

}  // namespace

WorkerIdentity worker_identity(AttackKind kind, std::size_t index,
                               const AttackerIdentity& identity) {
  const auto hosts = pool(kind, identity);
  const auto& h = hosts[index % hosts.size()];
  return {*h.address, h.role, tool_for(kind)};
}

}  // namespace h3lab::engine
