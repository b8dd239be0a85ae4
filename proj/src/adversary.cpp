#include "otframe/adversary.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

namespace otframe {

Receiver cheating_receiver(const ProtocolConfig& config, std::vector<std::size_t> choice,
                           std::set<std::size_t> illegal, Rng rng) {
  if (illegal.empty()) throw ParameterError("cheating receiver: illegal set is empty");
  ReceiverScript script;
  script.illegal = std::move(illegal);
  return Receiver(config, std::move(choice), std::move(rng), std::move(script));
}

const FamilyParams& experiment_params() {
  static const FamilyParams params = [] {
    Rng rng = Rng(0).derive("otframe/experiment-group/v1");
    return FamilyParams{Profile::toy, DdhParams{gen_schnorr_group(96, 64, rng)}};
  }();
  return params;
}

ProtocolConfig experiment_config(std::size_t k_cut) {
  ProtocolConfig c;
  c.n = 2;
  c.h = 1;
  c.k_cut = k_cut;
  c.msg_len = 16;
  c.assumption = Assumption::ddh;
  c.profile = Profile::toy;
  c.preset = experiment_params();
  return c;
}

namespace {

std::vector<Bytes> random_messages(const ProtocolConfig& config, Rng& rng) {
  std::vector<Bytes> m(config.n, Bytes(config.msg_len));
  for (auto& b : m) rng.fill(b);
  return m;
}

std::vector<std::size_t> random_choice(const ProtocolConfig& config, Rng& rng) {
  std::vector<std::size_t> all(config.n);
  for (std::size_t i = 0; i < config.n; ++i) all[i] = i;
  for (std::size_t i = config.n; i > 1; --i) std::swap(all[i - 1], all[rng.below(i)]);
  all.resize(config.h);
  return all;
}

CoinBits xor_coins(const CoinBits& a, const CoinBits& b) {
  CoinBits r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] ^ b[i];
  return r;
}

CoinBits random_coin(std::size_t k, Rng& rng) {
  CoinBits c(k);
  for (auto& b : c) b = rng.next_bit() ? 1 : 0;
  return c;
}

}  // namespace

TrialOutcome run_trial(const ProtocolConfig& config, const std::set<std::size_t>& illegal,
                       const Rng& rng, std::optional<CoinBits> sender_coin,
                       std::optional<CoinBits> receiver_coin) {
  Rng local = rng.derive("trial-inputs");
  const auto messages = random_messages(config, local);
  const auto choice = random_choice(config, local);

  ReceiverScript rs;
  rs.illegal = illegal;
  rs.coin = std::move(receiver_coin);
  SenderScript ss;
  ss.coin = std::move(sender_coin);
  SessionResult res = run_local_session(config, messages, choice, rng, rs, ss);

  TrialOutcome out;
  out.status = res.status;
  if (res.joint_coin) {
    out.joint = *res.joint_coin;
    const auto unchosen = unchosen_set(out.joint);
    out.exact_escape_coin =
        std::set<std::size_t>(unchosen.begin(), unchosen.end()) == illegal;
    for (std::size_t i : illegal)
      if (out.joint[i]) out.illegal_chosen = true;
  }
  for (std::size_t k = 0; k < res.output.size(); ++k)
    if (res.output[k] == messages[res.output_indices[k]]) ++out.correct;
  out.escaped = res.status == SessionStatus::completed && out.correct > config.h;
  return out;
}

EscapeStats escape_experiment(const ProtocolConfig& config, std::size_t d, std::size_t trials,
                              const Rng& rng, unsigned threads) {
  if (d < 1 || d > config.k_cut) throw ParameterError("escape experiment: need 1 <= d <= K");
  config.validate();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(trials, 1)));

  EscapeStats total;
  total.k_cut = config.k_cut;
  total.d = d;
  total.trials = trials;
  std::mutex mu;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;

  auto worker = [&] {
    EscapeStats part;
    try {
      for (std::size_t t = next++; t < trials; t = next++) {
        Rng trial_rng = rng.derive(static_cast<std::uint64_t>(t));
        Rng pick = trial_rng.derive("illegal-set");
        std::vector<std::size_t> idx(config.k_cut);
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        for (std::size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[pick.below(i)]);
        std::set<std::size_t> illegal(idx.begin(), idx.begin() + d);

        TrialOutcome o = run_trial(config, illegal, trial_rng);
        if (o.escaped) ++part.escapes;
        if (o.illegal_chosen) {
          ++part.illegal_chosen;
          if (o.status == SessionStatus::abort2) ++part.detected;
        }
        if (o.escaped != o.exact_escape_coin) ++part.escape_mismatch;
      }
    } catch (...) {
      std::lock_guard lock(mu);
      failure = std::current_exception();
      next = trials;
    }
    std::lock_guard lock(mu);
    total.escapes += part.escapes;
    total.illegal_chosen += part.illegal_chosen;
    total.detected += part.detected;
    total.escape_mismatch += part.escape_mismatch;
  };

  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return total;
}

void write_csv_header(std::ostream& os) { os << "K,d,trials,escapes,rate\n"; }

void write_csv_row(std::ostream& os, const EscapeStats& s) {
  os << s.k_cut << ',' << s.d << ',' << s.trials << ',' << s.escapes << ',' << s.rate() << '\n';
}

EnumerationReport enumerate_coins(const ProtocolConfig& config, std::size_t d, const Rng& rng) {
  const std::size_t k = config.k_cut;
  if (k > 16) throw ParameterError("enumerate_coins: K too large to enumerate");
  if (d < 1 || d > k) throw ParameterError("enumerate_coins: need 1 <= d <= K");
  std::set<std::size_t> illegal;
  for (std::size_t i = 0; i < d; ++i) illegal.insert(i);

  EnumerationReport rep;
  rep.k_cut = k;
  rep.d = d;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
    CoinBits r(k);
    for (std::size_t i = 0; i < k; ++i) r[i] = (bits >> i) & 1u;
    Rng trial = rng.derive(bits);
    Rng coins = trial.derive("sender-coin");
    CoinBits s = random_coin(k, coins);
    TrialOutcome o = run_trial(config, illegal, trial, s, xor_coins(s, r));
    ++rep.coins;
    if (o.escaped) ++rep.escapes;
    if (o.joint != r || o.escaped != o.exact_escape_coin) ++rep.mismatches;
  }
  return rep;
}

ExtractionResult cheat_extraction_check(const ProtocolConfig& config,
                                        const std::vector<Bytes>& messages, const Rng& rng,
                                        bool honest_vectors) {
  config.validate();
  Rng local = rng.derive("extraction");
  // Joint coin with at least one opened and one unopened vector when K allows.
  CoinBits r;
  do {
    r = random_coin(config.k_cut, local);
  } while (config.k_cut > 1 &&
           (chosen_set(r).empty() || unchosen_set(r).empty()));
  if (config.k_cut == 1) r[0] = 0;
  const CoinBits s = random_coin(config.k_cut, local);

  ReceiverScript rs;
  rs.coin = xor_coins(s, r);
  rs.decode_all = true;
  if (!honest_vectors)
    for (std::size_t i : unchosen_set(r)) rs.cheat.insert(i);
  SenderScript ss;
  ss.coin = s;

  Rng pick = local.derive("choice");
  const auto choice = random_choice(config, pick);
  SessionResult res = run_local_session(config, messages, choice, rng, rs, ss);

  ExtractionResult out;
  out.status = res.status;
  out.recovered = res.output;
  out.choice = choice;
  if (res.joint_coin) out.joint = *res.joint_coin;
  return out;
}

}  // namespace otframe
