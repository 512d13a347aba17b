#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "h3lab/engine/attack_kind.hpp"
#include "h3lab/engine/client_profile.hpp"

namespace h3lab::engine {

/// Addresses of the attacker host and its simulated bots.
struct AttackerIdentity {
  std::string attacker;
  std::vector<std::string> local_bots;   // same network as the attacker
  std::vector<std::string> remote_bots;  // the other client networks

  /// Every address that may source attack traffic.
  std::vector<std::string> all_addresses() const;
};

AttackerIdentity default_attacker_identity();

enum class WorkerRole { attacker, local_bot, remote_bot };

std::string_view to_string(WorkerRole role) noexcept;

struct WorkerIdentity {
  std::string host;
  WorkerRole role = WorkerRole::attacker;
  ClientKind client = ClientKind::curl;
};

/// Which host (and tool) drives worker `index` of an attack. Floods use the
/// attacker plus local bots, QUIC-flood only local bots, the loris kinds
/// the whole botnet, everything else the attacker alone.
WorkerIdentity worker_identity(AttackKind kind, std::size_t index,
                               const AttackerIdentity& identity);

}  // namespace h3lab::engine
