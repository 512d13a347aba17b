#include "h3lab/engine/transport.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "h3lab/common/error.hpp"
#include "h3lab/engine/packets.hpp"

namespace h3lab::engine {

namespace {

sockaddr_in resolve(const Endpoint& target) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  addrinfo* res = nullptr;
  if (getaddrinfo(target.host.c_str(), nullptr, &hints, &res) != 0 || res == nullptr) {
    throw TransportError("cannot resolve " + target.host);
  }
  sockaddr_in addr = *reinterpret_cast<sockaddr_in*>(res->ai_addr);
  freeaddrinfo(res);
  addr.sin_port = htons(target.port);
  return addr;
}

void send_all(int fd, std::span<const std::uint8_t> bytes) {
  while (!bytes.empty()) {
    const ssize_t n = ::send(fd, bytes.data(), bytes.size(), MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(std::string("send: ") + std::strerror(errno));
    }
    bytes = bytes.subspan(static_cast<std::size_t>(n));
  }
}

}  // namespace

PosixTransport::~PosixTransport() {
  for (const auto& [id, fd] : sockets_) ::close(fd);
  if (udp_socket_ >= 0) ::close(udp_socket_);
}

ConnectionId PosixTransport::open_connection(const ConnectionParams& params) {
  if (params.proto != "h1.1") {
    throw TransportError("protocol '" + params.proto +
                         "' needs an external QUIC/TLS/HTTP2 transport");
  }
  const sockaddr_in addr = resolve(params.target);
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw TransportError(std::string("socket: ") + std::strerror(errno));
  if (::connect(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) != 0) {
    const int err = errno;
    ::close(fd);
    throw TransportError("connect " + params.target.to_string() + ": " + std::strerror(err));
  }
  std::lock_guard lock(mutex_);
  const ConnectionId id = next_id_++;
  sockets_[id] = fd;
  return id;
}

int PosixTransport::socket_of(ConnectionId conn) {
  std::lock_guard lock(mutex_);
  auto it = sockets_.find(conn);
  if (it == sockets_.end()) throw TransportError("unknown connection");
  return it->second;
}

StreamId PosixTransport::open_stream(ConnectionId conn, const RequestHead* head) {
  const int fd = socket_of(conn);
  if (head != nullptr) {
    const std::string text = render_http1_head(*head);
    send_all(fd, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  }
  return 0;
}

void PosixTransport::write(ConnectionId conn, StreamId, std::span<const std::uint8_t> bytes) {
  send_all(socket_of(conn), bytes);
}

void PosixTransport::write_control(ConnectionId, std::span<const std::uint8_t>) {
  throw TransportError("control streams need an external HTTP/3 transport");
}

void PosixTransport::pause(ConnectionId) {
  throw TransportError("stream pause needs an external HTTP/2 transport");
}

void PosixTransport::resume(ConnectionId) {
  throw TransportError("stream resume needs an external HTTP/2 transport");
}

void PosixTransport::close(ConnectionId conn) {
  std::lock_guard lock(mutex_);
  auto it = sockets_.find(conn);
  if (it == sockets_.end()) return;
  ::close(it->second);
  sockets_.erase(it);
}

void PosixTransport::send_datagram(const Endpoint& target, std::span<const std::uint8_t> bytes) {
  const sockaddr_in addr = resolve(target);
  int fd = -1;
  {
    std::lock_guard lock(mutex_);
    if (udp_socket_ < 0) {
      udp_socket_ = ::socket(AF_INET, SOCK_DGRAM, 0);
      if (udp_socket_ < 0) throw TransportError(std::string("socket: ") + std::strerror(errno));
    }
    fd = udp_socket_;
  }
  if (::sendto(fd, bytes.data(), bytes.size(), 0, reinterpret_cast<const sockaddr*>(&addr),
               sizeof(addr)) < 0) {
    throw TransportError(std::string("sendto: ") + std::strerror(errno));
  }
}

}  // namespace h3lab::engine
