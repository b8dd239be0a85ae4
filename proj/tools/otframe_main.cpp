// Operator CLI: send / receive over TCP, local self-play, and the escape
// experiment. Exit codes: 0 ok, 1 usage, 2 protocol abort, 3 transport error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "otframe/adversary.hpp"
#include "otframe/session.hpp"

using namespace otframe;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAbort = 2;
constexpr int kExitTransport = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::size_t n = 2;
  std::size_t h = 1;
  std::size_t k_cut = 0;  // 0: profile default
  std::size_t msg_len = 16;
  std::string assumption = "ddh";
  std::string profile = "toy";
  std::optional<std::uint64_t> seed;
  std::uint64_t timeout_ms = 30000;
  std::string transcript_path;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--n", c.n, "number of sender messages")->required();
  app->add_option("--h", c.h, "number of messages the receiver obtains")->required();
  app->add_option("--k-cut", c.k_cut, "cut-and-choose width K (default 8 toy, 40 production)");
  app->add_option("--assumption", c.assumption, "ddh, dnr or dqr")
      ->check(CLI::IsMember({"ddh", "dnr", "dqr"}));
  app->add_option("--profile", c.profile, "toy or production")
      ->check(CLI::IsMember({"toy", "production"}));
  app->add_option("--seed", c.seed, "deterministic seed (default: OS entropy)");
  app->add_option("--timeout-ms", c.timeout_ms, "per-flow timeout");
  app->add_option("--transcript", c.transcript_path, "write exchanged frames as hex, one per line");
}

ProtocolConfig make_config(const Common& c) {
  ProtocolConfig cfg;
  cfg.n = c.n;
  cfg.h = c.h;
  cfg.profile = parse_profile(c.profile);
  cfg.assumption = parse_assumption(c.assumption);
  cfg.k_cut = c.k_cut ? c.k_cut : default_k_cut(cfg.profile);
  cfg.msg_len = c.msg_len;
  try {
    cfg.validate();
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

Rng party_rng(const Common& c, std::string_view role) {
  Rng base = c.seed ? Rng(*c.seed) : Rng();
  return base.derive(role);
}

std::string to_hex(const Bytes& b) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (auto v : b) {
    s.push_back(digits[v >> 4]);
    s.push_back(digits[v & 15]);
  }
  return s;
}

Bytes from_hex(const std::string& s) {
  if (s.size() % 2) throw UsageError("odd-length hex line");
  Bytes out;
  for (std::size_t i = 0; i < s.size(); i += 2) {
    auto nib = [](char ch) -> int {
      if (ch >= '0' && ch <= '9') return ch - '0';
      if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
      if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
      throw UsageError("bad hex digit");
    };
    out.push_back(static_cast<std::uint8_t>(nib(s[i]) * 16 + nib(s[i + 1])));
  }
  return out;
}

std::vector<Bytes> read_messages(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open message file " + path);
  std::vector<Bytes> out;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    out.push_back(from_hex(line));
  }
  if (out.empty()) throw UsageError("message file is empty");
  for (const auto& m : out)
    if (m.size() != out.front().size()) throw UsageError("messages must all have the same length");
  return out;
}

std::vector<std::size_t> parse_indices(const std::string& csv, std::size_t n, std::size_t h) {
  std::vector<std::size_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      throw UsageError("bad index: " + item);
    }
    if (pos != item.size() || v < 1 || v > n) throw UsageError("index out of range: " + item);
    out.push_back(v - 1);
  }
  if (out.size() != h)
    throw UsageError("expected exactly " + std::to_string(h) + " indices, got " +
                     std::to_string(out.size()));
  return out;
}

void write_transcript(const std::string& path, const SessionResult& res) {
  if (path.empty()) return;
  std::ofstream out(path);
  for (const auto& f : res.transcript) out << to_hex(f) << '\n';
}

int report(const SessionResult& res) {
  switch (res.status) {
    case SessionStatus::completed:
      return kExitOk;
    case SessionStatus::abort1:
    case SessionStatus::abort2:
      std::cerr << to_string(res.status) << ": " << res.reason << '\n';
      return kExitAbort;
    case SessionStatus::transport_error:
      std::cerr << "transport error: " << res.reason << '\n';
      return kExitTransport;
  }
  return kExitTransport;
}

void print_output(const SessionResult& res) {
  for (std::size_t k = 0; k < res.output.size(); ++k) {
    std::cerr << "message " << res.output_indices[k] + 1 << '\n';
    std::cout << to_hex(res.output[k]) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"h-out-of-n oblivious transfer from smooth projective hashing"};
  app.require_subcommand(1);
  // --h is the receiver count, so help is long-form only
  app.set_help_flag("--help", "print help and exit");

  const char* env_profile = std::getenv("OTFRAME_PROFILE");
  Common send_opts, recv_opts, demo_opts;
  for (Common* c : {&send_opts, &recv_opts, &demo_opts})
    if (env_profile) c->profile = env_profile;

  std::string messages_path, listen_addr;
  auto* send = app.add_subcommand("send", "act as sender and wait for one receiver");
  add_common(send, send_opts);
  send->add_option("--messages", messages_path, "hex messages, one per line")->required();
  send->add_option("--listen", listen_addr, "tcp:host:port (port 0 picks one)")->required();

  std::string indices, connect_addr;
  auto* receive = app.add_subcommand("receive", "act as receiver");
  add_common(receive, recv_opts);
  receive->add_option("--indices", indices, "1-based comma-separated choice")->required();
  receive->add_option("--connect", connect_addr, "tcp:host:port (required)");
  receive->add_option("--msg-len", recv_opts.msg_len, "message length in bytes");

  std::string demo_messages, demo_indices, demo_transport = "local";
  auto* demo = app.add_subcommand("demo", "self-play in one process");
  add_common(demo, demo_opts);
  demo->add_option("--messages", demo_messages, "hex messages (default: random)");
  demo->add_option("--indices", demo_indices, "1-based choice (default: random)");
  demo->add_option("--msg-len", demo_opts.msg_len, "length of generated messages");
  demo->add_option("--transport", demo_transport, "local or mem")
      ->check(CLI::IsMember({"local", "mem"}));

  auto* experiment = app.add_subcommand("experiment", "statistical experiments");
  experiment->require_subcommand(1);
  std::size_t exp_k = 8, exp_d = 1, exp_trials = 1000;
  std::uint64_t exp_seed = 1;
  unsigned exp_threads = 0;
  auto* escape = experiment->add_subcommand("escape", "cut-and-choose escape rate (CSV)");
  escape->add_option("--k", exp_k, "cut-and-choose width K")->required();
  escape->add_option("--d", exp_d, "number of illegal vectors")->required();
  escape->add_option("--trials", exp_trials, "number of sessions");
  escape->add_option("--seed", exp_seed, "base seed");
  escape->add_option("--threads", exp_threads, "worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*send) {
      ProtocolConfig cfg;
      std::vector<Bytes> messages = read_messages(messages_path);
      send_opts.msg_len = messages.front().size();
      cfg = make_config(send_opts);
      if (messages.size() != cfg.n)
        throw UsageError("message file has " + std::to_string(messages.size()) +
                         " lines, expected n = " + std::to_string(cfg.n));
      Sender sender(cfg, messages, party_rng(send_opts, "sender"));
      auto res = run_transport(sender, Role::sender, listen_addr,
                               std::chrono::milliseconds(send_opts.timeout_ms),
                               [](std::uint16_t port) {
                                 std::cerr << "listening on port " << port << std::endl;
                               });
      write_transcript(send_opts.transcript_path, res);
      return report(res);
    }
    if (*receive) {
      ProtocolConfig cfg = make_config(recv_opts);
      auto choice = parse_indices(indices, cfg.n, cfg.h);
      if (connect_addr.empty()) throw UsageError("--connect is required");
      Receiver receiver(cfg, choice, party_rng(recv_opts, "receiver"));
      auto res = run_transport(receiver, Role::receiver, connect_addr,
                               std::chrono::milliseconds(recv_opts.timeout_ms));
      write_transcript(recv_opts.transcript_path, res);
      int code = report(res);
      if (code == kExitOk) print_output(res);
      return code;
    }
    if (*demo) {
      std::vector<Bytes> messages;
      if (!demo_messages.empty()) {
        messages = read_messages(demo_messages);
        demo_opts.msg_len = messages.front().size();
      }
      ProtocolConfig cfg = make_config(demo_opts);
      Rng base = demo_opts.seed ? Rng(*demo_opts.seed) : Rng();
      Rng inputs = base.derive("demo-inputs");
      if (messages.empty()) {
        messages.assign(cfg.n, Bytes(cfg.msg_len));
        for (auto& m : messages) inputs.fill(m);
      }
      if (messages.size() != cfg.n)
        throw UsageError("message file has " + std::to_string(messages.size()) +
                         " lines, expected n = " + std::to_string(cfg.n));
      std::vector<std::size_t> choice;
      if (!demo_indices.empty()) {
        choice = parse_indices(demo_indices, cfg.n, cfg.h);
      } else {
        Permutation pi = random_permutation(cfg.n, inputs);
        for (std::size_t i = 0; i < cfg.h; ++i) choice.push_back(pi[i]);
      }
      SessionResult res;
      if (demo_transport == "mem") {
        Receiver receiver(cfg, choice, base.derive("receiver"));
        Sender sender(cfg, messages, base.derive("sender"));
        res = run_memory_session(receiver, sender, std::chrono::milliseconds(demo_opts.timeout_ms));
      } else {
        res = run_local_session(cfg, messages, choice, base);
      }
      write_transcript(demo_opts.transcript_path, res);
      int code = report(res);
      if (code == kExitOk) print_output(res);
      return code;
    }
    if (*escape) {
      ProtocolConfig cfg = experiment_config(exp_k);
      if (exp_d < 1 || exp_d > exp_k) throw UsageError("need 1 <= d <= k");
      EscapeStats stats = escape_experiment(cfg, exp_d, exp_trials, Rng(exp_seed), exp_threads);
      write_csv_header(std::cout);
      write_csv_row(std::cout, stats);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParameterError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const TransportError& e) {
    std::cerr << "transport error: " << e.what() << '\n';
    return kExitTransport;
  }
  return kExitUsage;
}
