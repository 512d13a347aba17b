#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>

#include "h3lab/common/net.hpp"
#include "h3lab/engine/attack_event.hpp"
#include "h3lab/wire/settings_frame.hpp"

namespace h3lab::engine {

using ConnectionId = std::uint64_t;
using StreamId = std::uint64_t;

struct ConnectionParams {
  Endpoint target;
  /// "h3", "quic", "h2" or "h1.1".
  std::string proto;
  std::optional<wire::SettingsFrame> settings;
  std::uint64_t max_concurrent_streams = 0;
};

/// What live execution needs from a network stack. QUIC/TLS handshakes and
/// HTTP/2 framing live behind this interface; the engine only sequences
/// the calls. Implementations must tolerate calls from several worker
/// threads, each worker using only its own connections.
class Transport {
 public:
  virtual ~Transport() = default;

  virtual ConnectionId open_connection(const ConnectionParams& params) = 0;
  /// Opens a request stream. `head` is null for raw HTTP/1.1 writes.
  virtual StreamId open_stream(ConnectionId conn, const RequestHead* head) = 0;
  virtual void write(ConnectionId conn, StreamId stream, std::span<const std::uint8_t> bytes) = 0;
  /// Writes to the connection's control stream (the SETTINGS frame).
  virtual void write_control(ConnectionId conn, std::span<const std::uint8_t> bytes) = 0;
  virtual void pause(ConnectionId conn) = 0;
  virtual void resume(ConnectionId conn) = 0;
  virtual void close(ConnectionId conn) = 0;
  virtual void send_datagram(const Endpoint& target, std::span<const std::uint8_t> bytes) = 0;
};

/// Plain POSIX sockets: UDP datagrams and cleartext TCP for "h1.1".
/// Anything needing QUIC, TLS or HTTP/2 throws TransportError.
class PosixTransport final : public Transport {
 public:
  PosixTransport() = default;
  ~PosixTransport() override;
  PosixTransport(const PosixTransport&) = delete;
  PosixTransport& operator=(const PosixTransport&) = delete;

  ConnectionId open_connection(const ConnectionParams& params) override;
  StreamId open_stream(ConnectionId conn, const RequestHead* head) override;
  void write(ConnectionId conn, StreamId stream, std::span<const std::uint8_t> bytes) override;
  void write_control(ConnectionId conn, std::span<const std::uint8_t> bytes) override;
  void pause(ConnectionId conn) override;
  void resume(ConnectionId conn) override;
  void close(ConnectionId conn) override;
  void send_datagram(const Endpoint& target, std::span<const std::uint8_t> bytes) override;

 private:
  int socket_of(ConnectionId conn);

  std::mutex mutex_;
  std::map<ConnectionId, int> sockets_;
  ConnectionId next_id_ = 1;
  int udp_socket_ = -1;
};

}  // namespace h3lab::engine
