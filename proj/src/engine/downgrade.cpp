#include "h3lab/engine/downgrade.hpp"

#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <json.hpp>

namespace h3lab::engine {

std::string DowngradeReport::to_json() const {
  nlohmann::ordered_json j;
  j["target"] = target;
  j["http3_only_configured"] = http3_only_configured;
  auto list = [](Capabilities caps) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto v : {HttpVersion::h1_1, HttpVersion::h2, HttpVersion::h3}) {
      if (caps.has(v)) arr.push_back(std::string(to_string(v)));
    }
    return arr;
  };
  j["accepted_versions"] = list(accepted_versions);
  j["unreachable_versions"] = list(unreachable_versions);
  j["downgrade_detected"] = downgrade_detected();
  return j.dump();
}

std::string_view to_string(ProbeOutcome outcome) noexcept {
  switch (outcome) {
    case ProbeOutcome::accepted: return "accepted";
    case ProbeOutcome::refused: return "refused";
    case ProbeOutcome::unreachable: return "unreachable";
  }
  return "refused";
}

ProbeOutcome StubProber::probe(const Endpoint&, HttpVersion version) {
  if (unreachable_.has(version)) return ProbeOutcome::unreachable;
  return accepted_.has(version) ? ProbeOutcome::accepted : ProbeOutcome::refused;
}

namespace {

class Fd {
 public:
  explicit Fd(int fd) : fd_(fd) {}
  ~Fd() {
    if (fd_ >= 0) ::close(fd_);
  }
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  int get() const { return fd_; }

 private:
  int fd_;
};

bool wait_for(int fd, short events, std::chrono::milliseconds timeout) {
  pollfd p{fd, events, 0};
  int rc;
  do {
    rc = ::poll(&p, 1, static_cast<int>(timeout.count()));
  } while (rc < 0 && errno == EINTR);
  return rc > 0;
}

ProbeOutcome classify(int err) {
  return err == ECONNREFUSED || err == ECONNRESET ? ProbeOutcome::refused
                                                  : ProbeOutcome::unreachable;
}

// Sends `request` on a fresh TCP connection and hands the first bytes of
// the reply to `accept`.
ProbeOutcome tcp_exchange(const Endpoint& target, const std::string& request,
                          std::chrono::milliseconds timeout,
                          const std::function<bool(const std::string&)>& accept) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string port = std::to_string(target.port);
  if (getaddrinfo(target.host.c_str(), port.c_str(), &hints, &res) != 0 || res == nullptr) {
    return ProbeOutcome::unreachable;
  }
  Fd fd(::socket(AF_INET, SOCK_STREAM, 0));
  if (fd.get() < 0) {
    freeaddrinfo(res);
    return ProbeOutcome::unreachable;
  }
  ::fcntl(fd.get(), F_SETFL, ::fcntl(fd.get(), F_GETFL) | O_NONBLOCK);
  const int rc = ::connect(fd.get(), res->ai_addr, res->ai_addrlen);
  freeaddrinfo(res);
  if (rc != 0) {
    if (errno != EINPROGRESS) return classify(errno);
    if (!wait_for(fd.get(), POLLOUT, timeout)) return ProbeOutcome::unreachable;
    int err = 0;
    socklen_t len = sizeof(err);
    ::getsockopt(fd.get(), SOL_SOCKET, SO_ERROR, &err, &len);
    if (err != 0) return classify(err);
  }
  std::size_t sent = 0;
  while (sent < request.size()) {
    if (!wait_for(fd.get(), POLLOUT, timeout)) return ProbeOutcome::refused;
    const ssize_t n = ::send(fd.get(), request.data() + sent, request.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EAGAIN || errno == EINTR) continue;
      return ProbeOutcome::refused;
    }
    sent += static_cast<std::size_t>(n);
  }
  std::string reply;
  char buf[512];
  while (reply.size() < 16 && wait_for(fd.get(), POLLIN, timeout)) {
    const ssize_t n = ::recv(fd.get(), buf, sizeof(buf), 0);
    if (n <= 0) break;
    reply.append(buf, static_cast<std::size_t>(n));
  }
  return accept(reply) ? ProbeOutcome::accepted : ProbeOutcome::refused;
}

}  // namespace

ProbeOutcome SocketProber::probe(const Endpoint& target, HttpVersion version) {
  switch (version) {
    case HttpVersion::h1_1:
      return tcp_exchange(
          target, "HEAD / HTTP/1.1\r\nHost: " + target.host + "\r\nConnection: close\r\n\r\n",
          timeout_, [](const std::string& r) { return r.rfind("HTTP/1.", 0) == 0; });
    case HttpVersion::h2: {
      // Prior-knowledge preface followed by an empty SETTINGS frame.
      std::string preface = "PRI * HTTP/2.0\r\n\r\nSM\r\n\r\n";
      preface.append("\x00\x00\x00\x04\x00\x00\x00\x00\x00", 9);
      return tcp_exchange(target, preface, timeout_, [](const std::string& r) {
        return r.size() >= 9 && static_cast<std::uint8_t>(r[3]) == 0x04;
      });
    }
    case HttpVersion::h3:
      return h3_check_ ? h3_check_(target) : ProbeOutcome::refused;
  }
  return ProbeOutcome::refused;
}

DowngradeReport downgrade_probe(const std::string& target, TrafficSink& sink,
                                CapabilityProber& prober, bool http3_only_configured) {
  if (prober.is_live() && sink.mode() != SinkMode::live) {
    throw SafetyError("live downgrade probing requires an acknowledged live sink");
  }
  const Endpoint endpoint =
      Endpoint::parse(target.find(':') == std::string::npos ? target + ":443" : target);
  DowngradeReport report;
  report.target = endpoint.to_string();
  report.http3_only_configured = http3_only_configured;
  std::vector<AttackEvent> events;
  bool unreachable = false;
  for (auto version : {HttpVersion::h1_1, HttpVersion::h2, HttpVersion::h3}) {
    const ProbeOutcome outcome = prober.probe(endpoint, version);
    if (outcome == ProbeOutcome::accepted) report.accepted_versions.add(version);
    if (outcome == ProbeOutcome::unreachable) {
      report.unreachable_versions.add(version);
      unreachable = true;
    }
    AttackEvent ev;
    ev.ts = 0.0;
    ev.worker_id = 0;
    ev.action = EventAction::connect;
    ev.target = endpoint.to_string();
    ev.detail["probe"] = std::string(to_string(version));
    ev.detail["result"] = std::string(to_string(outcome));
    ev.detail["proto"] = std::string(to_string(version));
    ev.detail["l4"] = version == HttpVersion::h3 ? "udp" : "tcp";
    events.push_back(std::move(ev));
  }
  sink.record(events);
  if (unreachable) {
    throw ProbeError("target " + endpoint.to_string() + " unreachable for " +
                         report.unreachable_versions.to_string(),
                     report);
  }
  return report;
}

}  // namespace h3lab::engine
