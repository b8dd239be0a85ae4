#include "otframe/protocol.hpp"

#include <algorithm>
#include <map>

#include "otframe/kernels.hpp"

namespace otframe {

std::size_t default_k_cut(Profile profile) { return profile == Profile::production ? 40 : 8; }

void ProtocolConfig::validate() const {
  if (h < 1 || h >= n) throw ParameterError("config: need 1 <= h < n");
  if (n > 65535) throw ParameterError("config: n too large");
  if (k_cut < 1 || k_cut > 65535) throw ParameterError("config: need 1 <= K <= 65535");
  if (msg_len > 65535) throw ParameterError("config: message length too large");
  if (preset && (preset->assumption() != assumption || preset->profile != profile))
    throw ParameterError("config: preset parameters do not match assumption/profile");
}

// ---------------------------------------------------------------------------
// Permutations

bool is_permutation(const Permutation& pi, std::size_t n) {
  if (pi.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (auto v : pi) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Permutation identity_permutation(std::size_t n) {
  Permutation pi(n);
  for (std::size_t i = 0; i < n; ++i) pi[i] = static_cast<std::uint32_t>(i);
  return pi;
}

Permutation random_permutation(std::size_t n, Rng& rng) {
  Permutation pi = identity_permutation(n);
  for (std::size_t i = n; i > 1; --i) std::swap(pi[i - 1], pi[rng.below(i)]);
  return pi;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  if (outer.size() != inner.size()) throw ParameterError("compose: length mismatch");
  Permutation out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer.at(inner[i]);
  return out;
}

namespace {

std::vector<std::size_t> checked_subset(std::size_t n, std::vector<std::size_t> s,
                                        const char* what) {
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw ParameterError(std::string(what) + ": repeated index");
  if (!s.empty() && s.back() >= n) throw ParameterError(std::string(what) + ": index out of range");
  return s;
}

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& sorted) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0, k = 0; i < n; ++i) {
    if (k < sorted.size() && sorted[k] == i)
      ++k;
    else
      out.push_back(i);
  }
  return out;
}

std::size_t take_random(std::vector<std::size_t>& pool, Rng& rng) {
  const std::size_t k = rng.below(pool.size());
  const std::size_t v = pool[k];
  pool[k] = pool.back();
  pool.pop_back();
  return v;
}

}  // namespace

Permutation gamma_sample(std::size_t n, const std::vector<std::size_t>& b1,
                         const std::vector<std::size_t>& b2, Rng& rng) {
  if (b1.size() != b2.size()) throw ParameterError("gamma_sample: subsets differ in size");
  auto src = checked_subset(n, b1, "gamma_sample");
  auto dst = checked_subset(n, b2, "gamma_sample");
  auto src_rest = complement(n, src);
  auto dst_rest = complement(n, dst);
  Permutation pi(n);
  for (std::size_t j : dst) pi[take_random(src, rng)] = static_cast<std::uint32_t>(j);
  for (std::size_t j : dst_rest) pi[take_random(src_rest, rng)] = static_cast<std::uint32_t>(j);
  return pi;
}

// ---------------------------------------------------------------------------
// Pads

Bytes derive_pad(std::span<const std::uint8_t> beta, std::size_t len,
                 std::span<const std::uint8_t> session_id, std::uint32_t i, std::uint32_t j) {
  static constexpr std::string_view kTag = "otframe/pad/v1";
  if (beta.size() > 0xFFFF) throw ParameterError("derive_pad: hash value too long");
  Bytes block(kTag.begin(), kTag.end());
  block.push_back(static_cast<std::uint8_t>(beta.size() >> 8));
  block.push_back(static_cast<std::uint8_t>(beta.size()));
  block.insert(block.end(), beta.begin(), beta.end());
  block.insert(block.end(), session_id.begin(), session_id.end());
  auto put32 = [&block](std::uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) block.push_back(static_cast<std::uint8_t>(v >> s));
  };
  put32(i);
  put32(j);
  const std::size_t counter_at = block.size();
  put32(0);

  Bytes out;
  out.reserve(len + 32);
  for (std::uint32_t counter = 0; out.size() < len; ++counter) {
    for (int k = 0; k < 4; ++k)
      block[counter_at + k] = static_cast<std::uint8_t>(counter >> (24 - 8 * k));
    Bytes d = sha256(block);
    out.insert(out.end(), d.begin(), d.end());
  }
  out.resize(len);
  return out;
}

FlowTag tag_of(const FlowMessage& msg) {
  if (std::holds_alternative<AbortFlow>(msg)) return FlowTag::abort;
  return static_cast<FlowTag>(msg.index() + 1);
}

std::vector<std::size_t> chosen_set(const CoinBits& r) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i]) out.push_back(i);
  return out;
}

std::vector<std::size_t> unchosen_set(const CoinBits& r) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (!r[i]) out.push_back(i);
  return out;
}

namespace {

CoinBits random_coin(std::size_t k, Rng& rng) {
  CoinBits c(k);
  for (auto& b : c) b = rng.next_bit() ? 1 : 0;
  return c;
}

CoinBits xor_coins(const CoinBits& a, const CoinBits& b) {
  CoinBits r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] ^ b[i];
  return r;
}

Bytes random_bytes(std::size_t len, Rng& rng) {
  Bytes b(len);
  rng.fill(b);
  return b;
}

Bytes concat(const Bytes& a, const Bytes& b) {
  Bytes out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

[[noreturn]] void abort1(const std::string& why) { throw ProtocolAbort(AbortLabel::abort1, why); }
[[noreturn]] void abort2(const std::string& why) { throw ProtocolAbort(AbortLabel::abort2, why); }

template <class T>
const T& expect(const std::optional<FlowMessage>& in, AbortLabel label) {
  if (!in || !std::holds_alternative<T>(*in))
    throw ProtocolAbort(label, "unexpected or missing flow");
  return std::get<T>(*in);
}

bool commitments_ok(const CommitKey& ck, CommitScheme scheme, const std::vector<Commitment>& cs,
                    std::size_t k) {
  if (cs.size() != coin_chunk_count(ck, k)) return false;
  for (const auto& c : cs)
    if (c.scheme != scheme || !well_formed(ck, c)) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Receiver

Receiver::Receiver(ProtocolConfig config, std::vector<std::size_t> choice, Rng rng,
                   ReceiverScript script)
    : config_(std::move(config)), rng_(std::move(rng)), script_(std::move(script)) {
  config_.validate();
  if (choice.size() != config_.h) throw ParameterError("receiver: choice set must have h indices");
  choice_ = checked_subset(config_.n, std::move(choice), "receiver choice");
  for (std::size_t i : script_.illegal)
    if (i >= config_.k_cut) throw ParameterError("receiver script: illegal index >= K");
  for (std::size_t i : script_.cheat) {
    if (i >= config_.k_cut) throw ParameterError("receiver script: cheat index >= K");
    if (script_.illegal.count(i)) throw ParameterError("receiver script: vector both illegal and cheat");
  }
  if (script_.coin && script_.coin->size() != config_.k_cut)
    throw ParameterError("receiver script: coin length must be K");
}

std::optional<FlowMessage> Receiver::step(const std::optional<FlowMessage>& incoming) {
  switch (phase_) {
    case Phase::start:
      if (incoming) abort1("receiver speaks first");
      phase_ = Phase::await_f2;
      return make_f1();
    case Phase::await_f2: {
      Flow3 f3 = on_f2(expect<Flow2>(incoming, AbortLabel::abort1));
      phase_ = Phase::await_f4;
      return f3;
    }
    case Phase::await_f4: {
      Flow5 f5 = on_f4(expect<Flow4>(incoming, AbortLabel::abort1));
      phase_ = Phase::await_f6;
      return f5;
    }
    case Phase::await_f6:
      on_f6(expect<Flow6>(incoming, AbortLabel::abort1));
      phase_ = Phase::done;
      return std::nullopt;
    case Phase::done:
      break;
  }
  abort1("session already finished");
}

Flow1 Receiver::make_f1() {
  const std::size_t n = config_.n, h = config_.h, k = config_.k_cut;
  params_ = config_.preset ? *config_.preset
                           : family_pg(config_.assumption, config_.profile, rng_);
  family_ = make_family(*params_);
  ck_ = &profile_commit_key(config_.profile);
  sid_ = random_bytes(kSessionIdBytes, rng_);

  CompositeFamily composite = sphdhc_from_sphdh(family_, n, h);
  shuffled_.clear();
  for (std::size_t i = 0; i < k; ++i) {
    InstanceVector a;
    if (script_.cheat.count(i)) {
      a = composite.cheat(rng_);
    } else if (script_.illegal.count(i)) {
      for (std::size_t j = 0; j < n; ++j) {
        Rng entry(rng_.next_seed());
        a.push_back(family_->sample(j <= h ? InstanceKind::projective : InstanceKind::smooth, entry));
      }
    } else {
      a = composite.sample(rng_);
    }
    shuffled_.push_back(apply_permutation(random_permutation(n, rng_), a));
  }

  Flow1 f1;
  f1.receiver_sid = sid_;
  f1.n = static_cast<std::uint32_t>(n);
  f1.h = static_cast<std::uint32_t>(h);
  f1.k_cut = static_cast<std::uint32_t>(k);
  f1.msg_len = static_cast<std::uint32_t>(config_.msg_len);
  f1.assumption = config_.assumption;
  f1.profile = config_.profile;
  f1.lambda = params_values(*params_);
  for (const auto& v : shuffled_) {
    std::vector<Instance> xs;
    for (const auto& e : v) xs.push_back(e.x);
    f1.vectors.push_back(std::move(xs));
  }
  return f1;
}

Flow3 Receiver::on_f2(const Flow2& f2) {
  if (f2.sender_sid.size() != kSessionIdBytes) abort1("F2: bad session id");
  if (!commitments_ok(*ck_, CommitScheme::hiding, f2.coin_commitments, config_.k_cut))
    abort1("F2: malformed coin commitment");
  sender_commitments_ = f2.coin_commitments;
  sid_ = concat(sid_, f2.sender_sid);
  own_bits_ = script_.coin ? *script_.coin : random_coin(config_.k_cut, rng_);
  own_coin_ = commit_coin(*ck_, CommitScheme::binding, own_bits_, rng_);
  return Flow3{own_coin_.commitments};
}

Flow5 Receiver::on_f4(const Flow4& f4) {
  const std::size_t n = config_.n;
  auto s = open_coin(*ck_, CommitScheme::hiding, sender_commitments_, f4.coin_openings,
                     config_.k_cut);
  if (!s) abort1("F4: sender coin does not open");
  joint_ = xor_coins(*s, own_bits_);

  // Preferred targets: the choice set first, then the remaining positions.
  std::vector<std::size_t> preference = choice_;
  for (std::size_t j : complement(n, choice_)) preference.push_back(j);

  Flow5 f5;
  f5.coin_openings = own_coin_.openings;
  f5.shuffle_width = config_.profile == Profile::toy && n <= 256 ? 1 : 2;
  for (std::size_t i : chosen_set(*joint_)) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& e = shuffled_[i][j];
      if (e.kind == InstanceKind::smooth)
        f5.openings.push_back(
            {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), e.w});
    }
  }
  unchosen_ = unchosen_set(*joint_);
  reordered_.assign(config_.k_cut, {});
  for (std::size_t i : unchosen_) {
    std::vector<std::size_t> projective;
    for (std::size_t j = 0; j < n; ++j)
      if (shuffled_[i][j].kind == InstanceKind::projective) projective.push_back(j);
    std::vector<std::size_t> targets(preference.begin(), preference.begin() + projective.size());
    Permutation pi = gamma_sample(n, projective, targets, rng_);
    reordered_[i] = apply_permutation(pi, shuffled_[i]);
    f5.shuffles.push_back(std::move(pi));
  }

  if (script_.decode_all) {
    targets_.clear();
    for (std::size_t j = 0; j < n; ++j) targets_.push_back(j);
  } else {
    targets_ = choice_;
    if (!script_.illegal.empty()) {
      targets_.push_back(preference[config_.h]);
      std::sort(targets_.begin(), targets_.end());
    }
  }
  return f5;
}

void Receiver::on_f6(const Flow6& f6) {
  const std::size_t n = config_.n;
  if (f6.ciphertexts.size() != n) abort1("F6: wrong ciphertext count");
  for (const auto& c : f6.ciphertexts)
    if (c.size() != config_.msg_len) abort1("F6: wrong ciphertext length");
  if (f6.keys.size() != unchosen_.size()) abort1("F6: wrong number of key rows");
  for (const auto& row : f6.keys) {
    if (row.size() != n) abort1("F6: wrong key row length");
    for (const auto& pk : row)
      if (!family_->accepts(pk)) abort1("F6: malformed projection key");
  }
  output_.clear();
  for (std::size_t j : targets_) {
    Bytes m = f6.ciphertexts[j];
    for (std::size_t r = 0; r < unchosen_.size(); ++r) {
      const std::size_t i = unchosen_[r];
      const auto& e = reordered_[i][j];
      HashValue beta = family_->project(e.x, f6.keys[r][j], e.w);
      Bytes pad = derive_pad(beta, config_.msg_len, sid_, static_cast<std::uint32_t>(i),
                             static_cast<std::uint32_t>(j));
      kernels::xor_into(m.data(), pad.data(), m.size());
    }
    output_.push_back(std::move(m));
  }
}

// ---------------------------------------------------------------------------
// Sender

Sender::Sender(ProtocolConfig config, std::vector<Bytes> messages, Rng rng, SenderScript script)
    : config_(std::move(config)),
      messages_(std::move(messages)),
      rng_(std::move(rng)),
      script_(std::move(script)) {
  config_.validate();
  if (messages_.size() != config_.n) throw ParameterError("sender: need exactly n messages");
  for (const auto& m : messages_)
    if (m.size() != config_.msg_len) throw ParameterError("sender: messages must all have length l");
  if (script_.coin && script_.coin->size() != config_.k_cut)
    throw ParameterError("sender script: coin length must be K");
}

std::optional<FlowMessage> Sender::step(const std::optional<FlowMessage>& incoming) {
  switch (phase_) {
    case Phase::await_f1: {
      Flow2 f2 = on_f1(expect<Flow1>(incoming, AbortLabel::abort2));
      phase_ = Phase::await_f3;
      return f2;
    }
    case Phase::await_f3: {
      Flow4 f4 = on_f3(expect<Flow3>(incoming, AbortLabel::abort2));
      phase_ = Phase::await_f5;
      return f4;
    }
    case Phase::await_f5: {
      Flow6 f6 = on_f5(expect<Flow5>(incoming, AbortLabel::abort2));
      phase_ = Phase::done;
      return f6;
    }
    case Phase::done:
      break;
  }
  abort2("session already finished");
}

Flow2 Sender::on_f1(const Flow1& f1) {
  const std::size_t n = config_.n;
  if (f1.n != n || f1.h != config_.h || f1.k_cut != config_.k_cut ||
      f1.msg_len != config_.msg_len || f1.assumption != config_.assumption ||
      f1.profile != config_.profile)
    abort2("F1: session parameters differ from the sender's configuration");
  if (f1.receiver_sid.size() != kSessionIdBytes) abort2("F1: bad session id");
  FamilyParams params;
  try {
    params = params_from_values(f1.assumption, f1.profile, f1.lambda);
  } catch (const DecodeError& e) {
    abort2(std::string("F1: ") + e.what());
  }
  if (!params_acceptable(params, rng_)) abort2("F1: family parameters rejected");
  family_ = make_family(params);
  ck_ = &profile_commit_key(config_.profile);
  if (f1.vectors.size() != config_.k_cut) abort2("F1: wrong number of instance vectors");
  for (const auto& v : f1.vectors) {
    if (v.size() != n) abort2("F1: wrong instance vector length");
    for (const auto& x : v)
      if (!family_->accepts(x)) abort2("F1: instance outside the family");
  }
  vectors_ = f1.vectors;

  Bytes own_sid = random_bytes(kSessionIdBytes, rng_);
  sid_ = concat(f1.receiver_sid, own_sid);
  own_bits_ = script_.coin ? *script_.coin : random_coin(config_.k_cut, rng_);
  own_coin_ = commit_coin(*ck_, CommitScheme::hiding, own_bits_, rng_);
  return Flow2{own_sid, own_coin_.commitments};
}

Flow4 Sender::on_f3(const Flow3& f3) {
  if (!commitments_ok(*ck_, CommitScheme::binding, f3.coin_commitments, config_.k_cut))
    abort2("F3: malformed coin commitment");
  receiver_commitments_ = f3.coin_commitments;
  return Flow4{own_coin_.openings};
}

Flow6 Sender::on_f5(const Flow5& f5) {
  const std::size_t n = config_.n, h = config_.h;
  auto s_prime = open_coin(*ck_, CommitScheme::binding, receiver_commitments_, f5.coin_openings,
                           config_.k_cut);
  if (!s_prime) abort2("F5: receiver coin does not open");
  joint_ = xor_coins(own_bits_, *s_prime);
  const auto& r = *joint_;

  std::map<std::size_t, std::vector<bool>> opened;
  for (std::size_t i : chosen_set(r)) opened[i] = std::vector<bool>(n, false);
  std::map<std::size_t, std::size_t> counts;
  for (const auto& o : f5.openings) {
    auto it = opened.find(o.vector);
    if (it == opened.end()) abort2("F5: opening for a vector that was not chosen");
    if (o.position >= n) abort2("F5: opening position out of range");
    if (it->second[o.position]) abort2("F5: position opened twice");
    it->second[o.position] = true;
    ++counts[o.vector];
    const Instance& x = vectors_[o.vector][o.position];
    if (!family_->accepts(o.w)) abort2("F5: malformed witness");
    InstanceKind kind;
    try {
      kind = family_->distinguish(x, o.w);
    } catch (const InvalidWitness&) {
      abort2("F5: witness matches neither relation");
    }
    if (kind != InstanceKind::smooth) abort2("F5: opened instance is not smooth");
  }
  for (const auto& [i, flags] : opened)
    if (counts[i] < n - h) abort2("F5: too few smooth openings in a chosen vector");

  const auto unchosen = unchosen_set(r);
  if (f5.shuffles.size() != unchosen.size()) abort2("F5: wrong number of shuffles");
  for (const auto& pi : f5.shuffles)
    if (!is_permutation(pi, n)) abort2("F5: shuffle is not a permutation");

  Flow6 f6;
  f6.ciphertexts = messages_;
  for (std::size_t k = 0; k < unchosen.size(); ++k) {
    const std::size_t i = unchosen[k];
    const auto reordered = apply_permutation(f5.shuffles[k], vectors_[i]);
    std::vector<ProjectionKey> row;
    row.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      KeyPair kp = family_->keygen(reordered[j], rng_);
      HashValue beta = family_->hash(reordered[j], kp.hk);
      Bytes pad = derive_pad(beta, config_.msg_len, sid_, static_cast<std::uint32_t>(i),
                             static_cast<std::uint32_t>(j));
      kernels::xor_into(f6.ciphertexts[j].data(), pad.data(), pad.size());
      row.push_back(std::move(kp.pk));
    }
    f6.keys.push_back(std::move(row));
  }
  return f6;
}

}  // namespace otframe
