#pragma once
//
// The six-flow h-out-of-n oblivious transfer: receiver and sender state
// machines, the cut-and-choose coin toss, the constrained shuffle sampler
// and pad expansion of hash values.
//
// Flow order (R = receiver, S = sender):
//   F1 R->S  parameters and K shuffled instance vectors
//   F2 S->R  hiding commitment to the sender coin s
//   F3 R->S  binding commitment to the receiver coin s'
//   F4 S->R  opening of s
//   F5 R->S  opening of s', witnesses for the chosen vectors, shuffles for the rest
//   F6 S->R  ciphertexts and projection keys
//
// All indices are 0-based.
//

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "otframe/commit.hpp"
#include "otframe/family.hpp"
#include "otframe/sph.hpp"

namespace otframe {

inline constexpr std::size_t kSessionIdBytes = 16;

std::size_t default_k_cut(Profile profile);

struct ProtocolConfig {
  std::size_t n = 2;
  std::size_t h = 1;
  std::size_t k_cut = 8;
  std::size_t msg_len = 16;
  Assumption assumption = Assumption::ddh;
  Profile profile = Profile::toy;
  // Receiver side: use these parameters instead of generating fresh ones.
  std::optional<FamilyParams> preset;

  void validate() const;  // throws ParameterError
};

// ---------------------------------------------------------------------------
// Permutations. Applying pi to x yields y with y[pi[i]] = x[i].

using Permutation = std::vector<std::uint32_t>;

bool is_permutation(const Permutation& pi, std::size_t n);
Permutation identity_permutation(std::size_t n);
Permutation random_permutation(std::size_t n, Rng& rng);
Permutation compose(const Permutation& outer, const Permutation& inner);  // outer after inner

template <class T>
std::vector<T> apply_permutation(const Permutation& pi, const std::vector<T>& x) {
  if (pi.size() != x.size()) throw ParameterError("apply_permutation: length mismatch");
  std::vector<T> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y.at(pi[i]) = x[i];
  return y;
}

// Uniform permutation of [0, n) with pi(b1) = b2 as sets. For each target in
// b2 a source is drawn from the unused part of b1, then the complement of b2
// is filled from the complement of b1 the same way.
Permutation gamma_sample(std::size_t n, const std::vector<std::size_t>& b1,
                         const std::vector<std::size_t>& b2, Rng& rng);

// ---------------------------------------------------------------------------
// Pads

// SHA-256 in counter mode over
//   "otframe/pad/v1" | u16 len(beta) | beta | session id | u32 i | u32 j | u32 counter
// truncated to `len` bytes.
Bytes derive_pad(std::span<const std::uint8_t> beta, std::size_t len,
                 std::span<const std::uint8_t> session_id, std::uint32_t i, std::uint32_t j);

// ---------------------------------------------------------------------------
// Flow messages

enum class FlowTag : std::uint8_t { f1 = 1, f2, f3, f4, f5, f6, abort = 0x7F };

struct Opening {
  std::uint32_t vector = 0;
  std::uint32_t position = 0;
  Witness w;
  friend bool operator==(const Opening&, const Opening&) = default;
};

struct Flow1 {
  Bytes receiver_sid;
  std::uint32_t n = 0;
  std::uint32_t h = 0;
  std::uint32_t k_cut = 0;
  std::uint32_t msg_len = 0;
  Assumption assumption = Assumption::ddh;
  Profile profile = Profile::toy;
  std::vector<BigUint> lambda;
  std::vector<std::vector<Instance>> vectors;
  friend bool operator==(const Flow1&, const Flow1&) = default;
};

struct Flow2 {
  Bytes sender_sid;
  std::vector<Commitment> coin_commitments;
  friend bool operator==(const Flow2&, const Flow2&) = default;
};

struct Flow3 {
  std::vector<Commitment> coin_commitments;
  friend bool operator==(const Flow3&, const Flow3&) = default;
};

struct Flow4 {
  std::vector<Decommitment> coin_openings;
  friend bool operator==(const Flow4&, const Flow4&) = default;
};

struct Flow5 {
  std::vector<Decommitment> coin_openings;
  std::vector<Opening> openings;
  std::vector<Permutation> shuffles;  // one per unchosen vector, ascending index
  std::uint8_t shuffle_width = 1;     // bytes per image on the wire: 1 (toy) or 2
  friend bool operator==(const Flow5&, const Flow5&) = default;
};

struct Flow6 {
  std::vector<Bytes> ciphertexts;
  std::vector<std::vector<ProjectionKey>> keys;  // one row per unchosen vector
  friend bool operator==(const Flow6&, const Flow6&) = default;
};

struct AbortFlow {
  friend bool operator==(const AbortFlow&, const AbortFlow&) = default;
};

using FlowMessage = std::variant<Flow1, Flow2, Flow3, Flow4, Flow5, Flow6, AbortFlow>;

FlowTag tag_of(const FlowMessage& msg);

// ---------------------------------------------------------------------------
// Parties

// abort1: raised by the receiver; abort2: raised by the sender.
enum class AbortLabel : std::uint8_t { abort1 = 1, abort2 = 2 };

class ProtocolAbort : public std::runtime_error {
 public:
  ProtocolAbort(AbortLabel label, const std::string& reason)
      : std::runtime_error(reason), label_(label) {}
  AbortLabel label() const { return label_; }

 private:
  AbortLabel label_;
};

class Party {
 public:
  virtual ~Party() = default;
  // The receiver starts with no incoming message. Returns the next flow, or
  // nothing once the party has finished. Throws ProtocolAbort.
  virtual std::optional<FlowMessage> step(const std::optional<FlowMessage>& incoming) = 0;
  virtual bool finished() const = 0;
  virtual AbortLabel abort_label() const = 0;
};

struct ReceiverScript {
  // Vectors built with h + 1 projective entries; they open only their
  // t - 1 smooth entries and steer the extra projective entry to one fixed
  // position outside the choice set, which is then decoded as well.
  std::set<std::size_t> illegal;
  // Vectors drawn from Cheat (all n entries projective).
  std::set<std::size_t> cheat;
  // Fixed receiver coin s'.
  std::optional<CoinBits> coin;
  // Decode every position instead of only the choice set.
  bool decode_all = false;
};

struct SenderScript {
  std::optional<CoinBits> coin;  // fixed sender coin s
};

class Receiver final : public Party {
 public:
  Receiver(ProtocolConfig config, std::vector<std::size_t> choice, Rng rng,
           ReceiverScript script = {});

  std::optional<FlowMessage> step(const std::optional<FlowMessage>& incoming) override;
  bool finished() const override { return phase_ == Phase::done; }
  AbortLabel abort_label() const override { return AbortLabel::abort1; }

  const ProtocolConfig& config() const { return config_; }
  const FamilyParams& params() const { return *params_; }
  // Shuffled vectors with their witnesses, as sent in F1.
  const std::vector<InstanceVector>& shuffled() const { return shuffled_; }
  const std::optional<CoinBits>& joint_coin() const { return joint_; }
  const std::vector<std::size_t>& choice() const { return choice_; }
  // Unchosen vector indices (ascending) and, indexed by vector, each one after
  // its second shuffle. Filled once F4 has been processed.
  const std::vector<std::size_t>& unchosen() const { return unchosen_; }
  const std::vector<InstanceVector>& reordered() const { return reordered_; }
  const std::vector<std::size_t>& output_indices() const { return targets_; }
  const std::vector<Bytes>& output() const { return output_; }

 private:
  enum class Phase { start, await_f2, await_f4, await_f6, done };

  Flow1 make_f1();
  Flow3 on_f2(const Flow2& f2);
  Flow5 on_f4(const Flow4& f4);
  void on_f6(const Flow6& f6);

  ProtocolConfig config_;
  std::vector<std::size_t> choice_;
  Rng rng_;
  ReceiverScript script_;
  Phase phase_ = Phase::start;

  std::optional<FamilyParams> params_;
  FamilyPtr family_;
  const CommitKey* ck_ = nullptr;
  Bytes sid_;
  std::vector<InstanceVector> shuffled_;
  std::vector<InstanceVector> reordered_;  // after the second shuffle (unchosen only)
  std::vector<Commitment> sender_commitments_;
  CoinCommitment own_coin_;
  CoinBits own_bits_;
  std::optional<CoinBits> joint_;
  std::vector<std::size_t> unchosen_;
  std::vector<std::size_t> targets_;
  std::vector<Bytes> output_;
};

class Sender final : public Party {
 public:
  Sender(ProtocolConfig config, std::vector<Bytes> messages, Rng rng, SenderScript script = {});

  std::optional<FlowMessage> step(const std::optional<FlowMessage>& incoming) override;
  bool finished() const override { return phase_ == Phase::done; }
  AbortLabel abort_label() const override { return AbortLabel::abort2; }

  const std::optional<CoinBits>& joint_coin() const { return joint_; }

 private:
  enum class Phase { await_f1, await_f3, await_f5, done };

  Flow2 on_f1(const Flow1& f1);
  Flow4 on_f3(const Flow3& f3);
  Flow6 on_f5(const Flow5& f5);

  ProtocolConfig config_;
  std::vector<Bytes> messages_;
  Rng rng_;
  SenderScript script_;
  Phase phase_ = Phase::await_f1;

  FamilyPtr family_;
  const CommitKey* ck_ = nullptr;
  Bytes sid_;
  std::vector<std::vector<Instance>> vectors_;
  CoinCommitment own_coin_;
  CoinBits own_bits_;
  std::vector<Commitment> receiver_commitments_;
  std::optional<CoinBits> joint_;
};

// Indices i with r[i] = 1 are opened (chosen); the rest are used for transfer.
std::vector<std::size_t> chosen_set(const CoinBits& r);
std::vector<std::size_t> unchosen_set(const CoinBits& r);

}  // namespace otframe
