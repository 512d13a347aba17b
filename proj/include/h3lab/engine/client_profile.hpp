#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

namespace h3lab::engine {

enum class ClientKind { chrome, firefox, curl, aioquic, scapy };

/// Stack fingerprint of a client: how large its handshake and headers
/// are, and how its TCP stack looks. Values approximate the real tools.
struct ClientProfile {
  ClientKind kind;
  std::string_view name;
  std::size_t quic_initial_size;     // padded Initial datagram
  std::size_t client_hello_len;      // TLS ClientHello body
  std::size_t client_hello_jitter;   // +/- from extension permutation / GREASE
  std::size_t quic_cipher_suites_len;
  std::size_t tls_cipher_suites_len;  // TLS over TCP
  std::size_t tls_session_id_len;     // TLS over TCP (middlebox compat)
  std::size_t dcid_len;
  std::size_t packet_number_len;
  std::size_t nci_frames;  // NEW_CONNECTION_ID frames in the first 1-RTT packet
  std::size_t tcp_syn_header_len;
  std::size_t tcp_data_header_len;
  std::size_t tcp_window;
  std::string_view user_agent;
};

const ClientProfile& client_profile(ClientKind kind) noexcept;
std::optional<ClientKind> parse_client_kind(std::string_view name) noexcept;

}  // namespace h3lab::engine
