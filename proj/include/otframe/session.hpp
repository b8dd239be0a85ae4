#pragma once
//
// Session drivers: an in-process loop pairing both state machines, and a
// per-party loop over a Channel (in-memory pair or TCP).
//

#include <chrono>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "otframe/protocol.hpp"
#include "otframe/wire.hpp"

namespace otframe {

enum class SessionStatus : std::uint8_t { completed, abort1, abort2, transport_error };

std::string_view to_string(SessionStatus s);

struct SessionResult {
  SessionStatus status = SessionStatus::completed;
  // Every frame exchanged, in order, including an abort frame if one was sent.
  std::vector<Bytes> transcript;
  std::vector<std::size_t> output_indices;
  std::vector<Bytes> output;
  std::optional<CoinBits> joint_coin;
  std::string reason;

  // Frames carrying F1..F6 (abort frames excluded).
  std::size_t flow_count() const;
};

// Drives receiver and sender alternately, passing every flow through the
// wire encoding.
SessionResult run_parties(Receiver& receiver, Sender& sender);

// Receiver randomness is rng.derive("receiver"), sender randomness
// rng.derive("sender"); `rng` itself is not advanced.
SessionResult run_local_session(const ProtocolConfig& config, const std::vector<Bytes>& messages,
                                const std::vector<std::size_t>& choice, const Rng& rng,
                                ReceiverScript receiver_script = {},
                                SenderScript sender_script = {});

// ---------------------------------------------------------------------------
// Transport

class TimeoutError : public TransportError {
 public:
  using TransportError::TransportError;
};

class Channel {
 public:
  virtual ~Channel() = default;
  virtual void send(const Bytes& frame) = 0;
  // Returns one complete frame (header validated). Throws TimeoutError,
  // TransportError on a closed or broken connection, DecodeError on a bad header.
  virtual Bytes receive(std::chrono::milliseconds timeout) = 0;
};

std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> make_memory_pair();

class TcpListener {
 public:
  // Port 0 picks an ephemeral port; see port().
  TcpListener(const std::string& host, std::uint16_t port);
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::uint16_t port() const { return port_; }
  std::unique_ptr<Channel> accept(std::chrono::milliseconds timeout);

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

// Retries refused connections until `timeout` expires.
std::unique_ptr<Channel> tcp_connect(const std::string& host, std::uint16_t port,
                                     std::chrono::milliseconds timeout);

struct Endpoint {
  enum class Kind { memory, tcp } kind = Kind::memory;
  std::string host;
  std::uint16_t port = 0;
};

// "mem:" or "tcp:host:port". Throws ParameterError.
Endpoint parse_endpoint(std::string_view text);

enum class Role : std::uint8_t { receiver, sender };

inline constexpr std::chrono::milliseconds kDefaultFlowTimeout{30000};

// Runs one party to completion over `channel`. Timeouts are reported as the
// counterpart's abort; connection failures as transport_error.
SessionResult run_party(Party& party, Role role, Channel& channel,
                        std::chrono::milliseconds flow_timeout = kDefaultFlowTimeout);

// Sender listens on the endpoint, receiver connects. `on_listening` gets the
// bound port (useful with port 0). Connection failures come back as
// transport_error.
SessionResult run_transport(Party& party, Role role, std::string_view endpoint,
                            std::chrono::milliseconds flow_timeout = kDefaultFlowTimeout,
                            const std::function<void(std::uint16_t)>& on_listening = {});

// Both parties in this process over a memory pair, one thread each. Returns
// the receiver's view (transcripts of both sides are identical).
SessionResult run_memory_session(Receiver& receiver, Sender& sender,
                                 std::chrono::milliseconds flow_timeout = kDefaultFlowTimeout);

}  // namespace otframe
