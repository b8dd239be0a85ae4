#include "otframe/session.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>
#include <thread>

namespace otframe {

std::string_view to_string(SessionStatus s) {
  switch (s) {
    case SessionStatus::completed: return "completed";
    case SessionStatus::abort1: return "abort1";
    case SessionStatus::abort2: return "abort2";
    case SessionStatus::transport_error: return "transport_error";
  }
  return "?";
}

std::size_t SessionResult::flow_count() const {
  std::size_t k = 0;
  for (const auto& f : transcript)
    if (f.size() > 5 && f[5] >= 1 && f[5] <= 6) ++k;
  return k;
}

namespace {

SessionStatus status_for(AbortLabel label) {
  return label == AbortLabel::abort1 ? SessionStatus::abort1 : SessionStatus::abort2;
}

SessionStatus peer_status(const Party& party) {
  return party.abort_label() == AbortLabel::abort1 ? SessionStatus::abort2 : SessionStatus::abort1;
}

// The receiver has nobody left to notify once F6 has arrived.
bool peer_waiting(const std::optional<FlowMessage>& incoming) {
  return !(incoming && tag_of(*incoming) == FlowTag::f6);
}

void collect_receiver(const Party& party, SessionResult& res) {
  if (const auto* r = dynamic_cast<const Receiver*>(&party)) {
    res.joint_coin = r->joint_coin();
    if (r->finished()) {
      res.output_indices = r->output_indices();
      res.output = r->output();
    }
  } else if (const auto* s = dynamic_cast<const Sender*>(&party)) {
    res.joint_coin = s->joint_coin();
  }
}

}  // namespace

SessionResult run_parties(Receiver& receiver, Sender& sender) {
  SessionResult res;
  Party* cur = &receiver;
  Party* other = &sender;
  std::optional<FlowMessage> incoming;
  while (true) {
    std::optional<FlowMessage> out;
    try {
      out = cur->step(incoming);
    } catch (const ProtocolAbort& e) {
      res.status = status_for(e.label());
      res.reason = e.what();
      if (peer_waiting(incoming)) res.transcript.push_back(encode_frame(AbortFlow{}));
      break;
    }
    if (!out) {
      res.status = SessionStatus::completed;
      break;
    }
    Bytes frame = encode_frame(*out);
    res.transcript.push_back(frame);
    try {
      incoming = decode_frame(frame);
    } catch (const DecodeError& e) {
      res.status = status_for(other->abort_label());
      res.reason = e.what();
      res.transcript.push_back(encode_frame(AbortFlow{}));
      break;
    }
    std::swap(cur, other);
  }
  collect_receiver(receiver, res);
  return res;
}

SessionResult run_local_session(const ProtocolConfig& config, const std::vector<Bytes>& messages,
                                const std::vector<std::size_t>& choice, const Rng& rng,
                                ReceiverScript receiver_script, SenderScript sender_script) {
  Receiver receiver(config, choice, rng.derive("receiver"), std::move(receiver_script));
  Sender sender(config, messages, rng.derive("sender"), std::move(sender_script));
  return run_parties(receiver, sender);
}

// ---------------------------------------------------------------------------
// Per-party loop

SessionResult run_party(Party& party, Role role, Channel& channel,
                        std::chrono::milliseconds flow_timeout) {
  SessionResult res;
  std::optional<FlowMessage> incoming;
  bool need_receive = role == Role::sender;

  auto abort_own = [&](const std::string& why) {
    res.status = status_for(party.abort_label());
    res.reason = why;
    if (!peer_waiting(incoming)) return;
    Bytes frame = encode_frame(AbortFlow{});
    try {
      channel.send(frame);
      res.transcript.push_back(std::move(frame));
    } catch (const TransportError&) {
    }
  };

  try {
    while (true) {
      if (need_receive) {
        Bytes frame;
        try {
          frame = channel.receive(flow_timeout);
          res.transcript.push_back(frame);
          incoming = decode_frame(frame);
        } catch (const DecodeError& e) {
          incoming.reset();
          abort_own(std::string("malformed frame: ") + e.what());
          break;
        }
        if (std::holds_alternative<AbortFlow>(*incoming)) {
          res.status = peer_status(party);
          res.reason = "counterpart aborted";
          break;
        }
      }
      need_receive = true;

      std::optional<FlowMessage> out;
      try {
        out = party.step(incoming);
      } catch (const ProtocolAbort& e) {
        abort_own(e.what());
        break;
      }
      if (!out) {
        res.status = SessionStatus::completed;
        break;
      }
      Bytes frame = encode_frame(*out);
      channel.send(frame);
      res.transcript.push_back(std::move(frame));
      if (party.finished()) {
        res.status = SessionStatus::completed;
        break;
      }
    }
  } catch (const TimeoutError& e) {
    res.status = peer_status(party);
    res.reason = e.what();
  } catch (const TransportError& e) {
    res.status = SessionStatus::transport_error;
    res.reason = e.what();
  }
  collect_receiver(party, res);
  return res;
}

// ---------------------------------------------------------------------------
// Memory channel

namespace {

struct MemoryLink {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<Bytes> queue[2];
  bool closed[2] = {false, false};
};

class MemoryChannel final : public Channel {
 public:
  MemoryChannel(std::shared_ptr<MemoryLink> link, int side) : link_(std::move(link)), side_(side) {}
  ~MemoryChannel() override {
    std::lock_guard lock(link_->mu);
    link_->closed[side_] = true;
    link_->cv.notify_all();
  }

  void send(const Bytes& frame) override {
    std::lock_guard lock(link_->mu);
    if (link_->closed[1 - side_]) throw TransportError("memory channel: peer closed");
    link_->queue[1 - side_].push_back(frame);
    link_->cv.notify_all();
  }

  Bytes receive(std::chrono::milliseconds timeout) override {
    std::unique_lock lock(link_->mu);
    auto& q = link_->queue[side_];
    const bool ready = link_->cv.wait_for(
        lock, timeout, [&] { return !q.empty() || link_->closed[1 - side_]; });
    if (!q.empty()) {
      Bytes frame = std::move(q.front());
      q.pop_front();
      decode_header(frame);
      return frame;
    }
    if (!ready) throw TimeoutError("memory channel: timed out");
    throw TransportError("memory channel: peer closed");
  }

 private:
  std::shared_ptr<MemoryLink> link_;
  int side_;
};

}  // namespace

std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> make_memory_pair() {
  auto link = std::make_shared<MemoryLink>();
  return {std::make_unique<MemoryChannel>(link, 0), std::make_unique<MemoryChannel>(link, 1)};
}

SessionResult run_memory_session(Receiver& receiver, Sender& sender,
                                 std::chrono::milliseconds flow_timeout) {
  auto [rx, tx] = make_memory_pair();
  SessionResult sender_view;
  std::thread t([&] { sender_view = run_party(sender, Role::sender, *tx, flow_timeout); });
  SessionResult res = run_party(receiver, Role::receiver, *rx, flow_timeout);
  t.join();
  // A receiver-side abort after F6 leaves the sender completed; report the receiver's view.
  return res;
}

// ---------------------------------------------------------------------------
// TCP

namespace {

using Clock = std::chrono::steady_clock;

int remaining_ms(Clock::time_point deadline) {
  auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
  return left.count() < 0 ? 0 : static_cast<int>(left.count());
}

class TcpChannel final : public Channel {
 public:
  explicit TcpChannel(int fd) : fd_(fd) {
    int one = 1;
    ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  }
  ~TcpChannel() override { ::close(fd_); }

  void send(const Bytes& frame) override {
    std::size_t off = 0;
    while (off < frame.size()) {
      ssize_t k = ::send(fd_, frame.data() + off, frame.size() - off, MSG_NOSIGNAL);
      if (k < 0) {
        if (errno == EINTR) continue;
        throw TransportError(std::string("tcp send: ") + std::strerror(errno));
      }
      off += static_cast<std::size_t>(k);
    }
  }

  Bytes receive(std::chrono::milliseconds timeout) override {
    const auto deadline = Clock::now() + timeout;
    Bytes header(kFrameHeaderBytes);
    read_exact(header.data(), header.size(), deadline);
    const FrameHeader hdr = decode_header(header);
    Bytes frame = std::move(header);
    frame.resize(kFrameHeaderBytes + hdr.body_length);
    read_exact(frame.data() + kFrameHeaderBytes, hdr.body_length, deadline);
    return frame;
  }

 private:
  void read_exact(std::uint8_t* dst, std::size_t len, Clock::time_point deadline) {
    std::size_t got = 0;
    while (got < len) {
      pollfd p{fd_, POLLIN, 0};
      int rc = ::poll(&p, 1, remaining_ms(deadline));
      if (rc < 0) {
        if (errno == EINTR) continue;
        throw TransportError(std::string("tcp poll: ") + std::strerror(errno));
      }
      if (rc == 0) throw TimeoutError("tcp: timed out waiting for counterpart");
      ssize_t k = ::recv(fd_, dst + got, len - got, 0);
      if (k == 0) throw TransportError("tcp: connection closed by peer");
      if (k < 0) {
        if (errno == EINTR || errno == EAGAIN) continue;
        throw TransportError(std::string("tcp recv: ") + std::strerror(errno));
      }
      got += static_cast<std::size_t>(k);
    }
  }

  int fd_;
};

struct AddrInfo {
  addrinfo* head = nullptr;
  ~AddrInfo() {
    if (head) ::freeaddrinfo(head);
  }
};

void resolve(const std::string& host, std::uint16_t port, bool passive, AddrInfo& out) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  const std::string service = std::to_string(port);
  int rc = ::getaddrinfo(host.empty() ? nullptr : host.c_str(), service.c_str(), &hints, &out.head);
  if (rc != 0) throw TransportError("cannot resolve " + host + ": " + ::gai_strerror(rc));
}

}  // namespace

TcpListener::TcpListener(const std::string& host, std::uint16_t port) {
  AddrInfo ai;
  resolve(host, port, true, ai);
  for (addrinfo* a = ai.head; a != nullptr; a = a->ai_next) {
    int fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
    if (fd < 0) continue;
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (::bind(fd, a->ai_addr, a->ai_addrlen) == 0 && ::listen(fd, 8) == 0) {
      fd_ = fd;
      break;
    }
    ::close(fd);
  }
  if (fd_ < 0) throw TransportError("cannot listen on " + host + ":" + std::to_string(port));
  sockaddr_storage ss{};
  socklen_t len = sizeof ss;
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&ss), &len);
  port_ = ss.ss_family == AF_INET6 ? ntohs(reinterpret_cast<sockaddr_in6*>(&ss)->sin6_port)
                                   : ntohs(reinterpret_cast<sockaddr_in*>(&ss)->sin_port);
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<Channel> TcpListener::accept(std::chrono::milliseconds timeout) {
  const auto deadline = Clock::now() + timeout;
  while (true) {
    pollfd p{fd_, POLLIN, 0};
    int rc = ::poll(&p, 1, remaining_ms(deadline));
    if (rc < 0 && errno == EINTR) continue;
    if (rc < 0) throw TransportError(std::string("tcp accept poll: ") + std::strerror(errno));
    if (rc == 0) throw TransportError("tcp: no connection before timeout");
    int fd = ::accept(fd_, nullptr, nullptr);
    if (fd >= 0) return std::make_unique<TcpChannel>(fd);
    if (errno != EINTR && errno != EAGAIN && errno != ECONNABORTED)
      throw TransportError(std::string("tcp accept: ") + std::strerror(errno));
  }
}

std::unique_ptr<Channel> tcp_connect(const std::string& host, std::uint16_t port,
                                     std::chrono::milliseconds timeout) {
  const auto deadline = Clock::now() + timeout;
  std::string last = "no address";
  while (true) {
    AddrInfo ai;
    resolve(host, port, false, ai);
    for (addrinfo* a = ai.head; a != nullptr; a = a->ai_next) {
      int fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
      if (fd < 0) continue;
      if (::connect(fd, a->ai_addr, a->ai_addrlen) == 0) return std::make_unique<TcpChannel>(fd);
      last = std::strerror(errno);
      ::close(fd);
    }
    if (Clock::now() >= deadline)
      throw TransportError("cannot connect to " + host + ":" + std::to_string(port) + ": " + last);
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
}

Endpoint parse_endpoint(std::string_view text) {
  if (text == "mem:") return {};
  if (text.substr(0, 4) != "tcp:") throw ParameterError("endpoint must be mem: or tcp:host:port");
  std::string_view rest = text.substr(4);
  const auto colon = rest.rfind(':');
  if (colon == std::string_view::npos) throw ParameterError("endpoint: missing port");
  std::string_view host = rest.substr(0, colon);
  std::string_view port = rest.substr(colon + 1);
  if (host.size() >= 2 && host.front() == '[' && host.back() == ']')
    host = host.substr(1, host.size() - 2);
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
  if (ec != std::errc{} || ptr != port.data() + port.size() || value > 65535 || port.empty())
    throw ParameterError("endpoint: bad port");
  return {Endpoint::Kind::tcp, std::string(host), static_cast<std::uint16_t>(value)};
}

SessionResult run_transport(Party& party, Role role, std::string_view endpoint,
                            std::chrono::milliseconds flow_timeout,
                            const std::function<void(std::uint16_t)>& on_listening) {
  const Endpoint ep = parse_endpoint(endpoint);
  if (ep.kind == Endpoint::Kind::memory)
    throw ParameterError("mem: pairs two parties in one process; use run_memory_session");
  try {
    std::unique_ptr<Channel> channel;
    if (role == Role::sender) {
      TcpListener listener(ep.host, ep.port);
      if (on_listening) on_listening(listener.port());
      channel = listener.accept(flow_timeout);
    } else {
      channel = tcp_connect(ep.host, ep.port, flow_timeout);
    }
    return run_party(party, role, *channel, flow_timeout);
  } catch (const TransportError& e) {
    SessionResult res;
    res.status = SessionStatus::transport_error;
    res.reason = e.what();
    return res;
  }
}

}  // namespace otframe
