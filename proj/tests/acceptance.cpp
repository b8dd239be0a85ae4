// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "oracles.hpp"
#include "otframe/adversary.hpp"
#include "otframe/family.hpp"
#include "random_flows.hpp"

using namespace otframe;
using namespace std::chrono_literals;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<Bytes> random_messages(std::size_t n, std::size_t len, Rng& rng) {
  std::vector<Bytes> m(n, Bytes(len));
  for (auto& b : m) rng.fill(b);
  return m;
}

std::vector<std::size_t> random_subset(std::size_t n, std::size_t h, Rng& rng) {
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(all[i - 1], all[rng.below(i)]);
  all.resize(h);
  return all;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const char* name_of(Assumption a) {
  switch (a) {
    case Assumption::ddh: return "DDH";
    case Assumption::dnr: return "DNR";
    case Assumption::dqr: return "DQR";
  }
  return "?";
}

constexpr std::array<Assumption, 3> kAssumptions = {Assumption::ddh, Assumption::dqr,
                                                     Assumption::dnr};

// ---------------------------------------------------------------------------
// 1 and 2: honest sessions

struct SessionSweep {
  std::size_t runs = 0;
  std::size_t correct = 0;
  std::size_t completed = 0;
  std::size_t six_flows = 0;
  double seconds = 0;
};

SessionSweep sweep_sessions() {
  SessionSweep out;
  const auto t0 = std::chrono::steady_clock::now();
  for (Assumption a : kAssumptions) {
    for (std::uint64_t i = 0; i < 200; ++i) {
      Rng rng = Rng(1).derive(name_of(a)).derive(i);
      Rng inputs = rng.derive("inputs");
      ProtocolConfig c;
      c.n = 2 + inputs.below(5);
      c.h = 1 + inputs.below(c.n - 1);
      c.k_cut = 8;
      c.msg_len = 16;
      c.assumption = a;
      c.profile = Profile::toy;
      const auto msgs = random_messages(c.n, c.msg_len, inputs);
      auto choice = random_subset(c.n, c.h, inputs);
      SessionResult res = run_local_session(c, msgs, choice, rng);
      ++out.runs;
      if (res.status == SessionStatus::completed) {
        ++out.completed;
        if (res.flow_count() == 6 && res.transcript.size() == 6) ++out.six_flows;
      }
      std::sort(choice.begin(), choice.end());
      std::vector<Bytes> expected;
      for (std::size_t j : choice) expected.push_back(msgs[j]);
      if (res.output_indices == choice && res.output == expected) ++out.correct;
    }
  }
  out.seconds = seconds_since(t0);
  return out;
}

// ---------------------------------------------------------------------------
// 3: projection identity

Verdict projection_identity() {
  std::size_t fails = 0, trials = 0;
  std::string per;
  for (Assumption a : kAssumptions) {
    Rng rng = Rng(3).derive(name_of(a));
    const FamilyParams params = family_pg(a, Profile::toy, rng);
    std::size_t here = 0;
    for (const FamilyPtr& fam : {make_base_family(params), make_family(params)}) {
      for (int t = 0; t < 1000; ++t) {
        InstancePair p = fam->sample(InstanceKind::projective, rng);
        KeyPair k = fam->keygen(p.x, rng);
        ++trials;
        if (fam->hash(p.x, k.hk) != fam->project(p.x, k.pk, p.w)) ++here;
      }
    }
    fails += here;
    per += fmt(" %s:%zu", name_of(a), here);
  }
  return {fails == 0, fmt("%zu trials (base and protocol family, 1000 each), failures", trials) + per};
}

// ---------------------------------------------------------------------------
// 4: DDH smoothness by enumeration

Verdict ddh_enumeration() {
  const DdhParams p{{23, 11, 2}};
  const DdhInstance x{8, 16, 9};
  std::map<BigUint, std::map<BigUint, int>> seen;
  for (int u = 0; u < 11; ++u)
    for (int v = 0; v < 11; ++v) {
      DdhKeyPair k = ddh_kg_with(p, x, u, v);
      ++seen[k.pk][k.hk];
    }
  bool ok = seen.size() == 11;
  for (const auto& [pk, hs] : seen) {
    ok = ok && hs.size() == 11;
    for (const auto& [h, c] : hs) ok = ok && c == 1;
  }
  return {ok, fmt("q=11, x=(8,16,9): %zu projection keys, each with 11 distinct hash values once",
                  seen.size())};
}

// ---------------------------------------------------------------------------
// 5: epsilon-universality at N = 77 and N = 15

double guess_probability(const ExpShape& shape, oracle::u64 x) {
  std::vector<std::pair<oracle::u64, oracle::u64>> table;
  const oracle::u64 m = shape.modulus.get_ui(), g = shape.g.get_ui();
  for (oracle::u64 hk = 0; hk < shape.key_space.get_ui(); ++hk)
    table.emplace_back(oracle::slow_pow(g, hk, m), oracle::slow_pow(x, hk, m));
  return oracle::max_guess_probability(table);
}

Verdict guessing_bound() {
  Rng rng(5);
  const DqrParams q = dqr_pg(Profile::toy, rng);
  const DnrParams n = dnr_pg(Profile::toy, rng);
  double worst_q = 0, worst_n = 0;
  for (unsigned long r = 0; r < 77; ++r) {
    const ResSample s = dqr_make_instance(q, r, 1);
    worst_q = std::max(worst_q, guess_probability(q.shape(), s.x.get_ui()));
  }
  for (unsigned long r = 1; r < 15; ++r)
    for (unsigned long v = 1; v < 15; ++v) {
      if (std::gcd(r, 15ul) != 1 || std::gcd(v, 15ul) != 1) continue;
      const ResSample s = dnr_make_instance(n, r, v);
      worst_n = std::max(worst_n, guess_probability(n.shape(), s.x.get_ui()));
    }
  const bool ok = worst_q <= 0.5 + 1e-12 && worst_n <= 0.5 + 1e-12;
  return {ok, fmt("worst conditional guess over all smooth instances: DQR N=77 g=%lu (order %llu) "
                  "%.4f, DNR N=15 %.4f, bound 0.5",
                  q.g.get_ui(),
                  static_cast<unsigned long long>(oracle::order(q.g.get_ui(), 77)), worst_q,
                  worst_n)};
}

// ---------------------------------------------------------------------------
// 6 and 7: cut-and-choose escapes

struct EscapeRun {
  EscapeStats stats;
  std::vector<EnumerationReport> enums;
  double seconds = 0;
};

EscapeRun escape_run() {
  EscapeRun out;
  const auto t0 = std::chrono::steady_clock::now();
  out.stats = escape_experiment(experiment_config(8), 2, 100000, Rng(6), 0);
  for (auto [k, d] : {std::pair<std::size_t, std::size_t>{8, 2}, {10, 3}, {6, 6}, {4, 1}})
    out.enums.push_back(enumerate_coins(experiment_config(k), d, Rng(7).derive(k)));
  out.seconds = seconds_since(t0);
  return out;
}

// ---------------------------------------------------------------------------
// 8: extraction through Cheat vectors

Verdict extraction() {
  std::size_t full = 0, runs = 0, honest_ok = 0, honest_runs = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    Rng rng = Rng(8).derive(i);
    Rng inputs = rng.derive("inputs");
    ProtocolConfig c;
    c.n = 2 + inputs.below(5);
    c.h = 1 + inputs.below(c.n - 1);
    c.assumption = kAssumptions[i % 3];
    const auto msgs = random_messages(c.n, c.msg_len, inputs);
    ExtractionResult e = cheat_extraction_check(c, msgs, rng);
    ++runs;
    if (e.status == SessionStatus::completed && e.recovered == msgs) ++full;
  }
  for (std::uint64_t i = 0; i < 20; ++i) {
    Rng rng = Rng(9).derive(i);
    Rng inputs = rng.derive("inputs");
    ProtocolConfig c = experiment_config(8);
    c.n = 2 + inputs.below(5);
    c.h = 1 + inputs.below(c.n - 1);
    const auto msgs = random_messages(c.n, c.msg_len, inputs);
    ExtractionResult e = cheat_extraction_check(c, msgs, rng, true);
    ++honest_runs;
    if (e.status != SessionStatus::completed || e.recovered.size() != c.n) continue;
    std::set<std::size_t> right;
    for (std::size_t j = 0; j < c.n; ++j)
      if (e.recovered[j] == msgs[j]) right.insert(j);
    if (right == std::set<std::size_t>(e.choice.begin(), e.choice.end())) ++honest_ok;
  }
  return {full == runs && honest_ok == honest_runs,
          fmt("Cheat vectors recovered all n messages in %zu/%zu toy runs; honest vectors "
              "recovered exactly the h chosen ones in %zu/%zu runs",
              full, runs, honest_ok, honest_runs)};
}

// ---------------------------------------------------------------------------
// 9: amplifier smoothness
//
// With the extractor output y = A * (H_1 || ... || H_m) ^ b, each copy adds
// an independent term A_i * H_i. Given pk_i, H_i ranges over the hash values
// of the keys sharing pk_i, so the output given (pk, A, b) is the XOR
// convolution of m small distributions on GF(2)^2. The expectation of its
// distance from uniform is computed exactly: every key class and every 2 x 8
// block A_i is enumerated for one copy, giving a finite set of per-copy
// distributions (up to translation) with their weights; the m-fold average
// then runs over multisets of those.

using Dist4 = std::array<double, 4>;

Dist4 canonical(const std::array<int, 4>& counts) {
  std::array<int, 4> best = counts;
  for (int c = 1; c < 4; ++c) {
    std::array<int, 4> t{};
    for (int z = 0; z < 4; ++z) t[z ^ c] = counts[z];
    best = std::max(best, t);
  }
  const double k = counts[0] + counts[1] + counts[2] + counts[3];
  return {best[0] / k, best[1] / k, best[2] / k, best[3] / k};
}

// Walsh coefficients for characters 1..3.
std::array<double, 3> walsh(const Dist4& p) {
  std::array<double, 3> f{};
  for (int a = 1; a < 4; ++a)
    for (int z = 0; z < 4; ++z) f[a - 1] += std::popcount(static_cast<unsigned>(a & z)) % 2 ? -p[z] : p[z];
  return f;
}

double distance_from_walsh(const std::array<double, 3>& f) {
  std::vector<double> p(4);
  for (int z = 0; z < 4; ++z) {
    double s = 1;
    for (int a = 1; a < 4; ++a) s += std::popcount(static_cast<unsigned>(a & z)) % 2 ? -f[a - 1] : f[a - 1];
    p[z] = s / 4;
  }
  return oracle::distance_from_uniform(p);
}

int parity8(unsigned v) { return std::popcount(v) & 1; }

// Per-copy distribution types for smooth instance x: canonical distribution -> probability.
std::map<Dist4, double> copy_types(oracle::u64 g, oracle::u64 x, oracle::u64 n) {
  std::map<oracle::u64, std::vector<oracle::u64>> classes;  // pk -> hash values, one per key
  for (oracle::u64 hk = 0; hk < n; ++hk)
    classes[oracle::slow_pow(g, hk, n)].push_back(oracle::slow_pow(x, hk, n));
  std::map<Dist4, double> types;
  const double per_key = 1.0 / static_cast<double>(n);
  const double per_matrix = 1.0 / 65536.0;
  for (const auto& [pk, ys] : classes) {
    const double w = per_key * static_cast<double>(ys.size());
    for (unsigned row0 = 0; row0 < 256; ++row0)
      for (unsigned row1 = 0; row1 < 256; ++row1) {
        std::array<int, 4> counts{};
        for (oracle::u64 y : ys) {
          const unsigned v = static_cast<unsigned>(y);
          ++counts[parity8(row0 & v) | (parity8(row1 & v) << 1)];
        }
        types[canonical(counts)] += w * per_matrix;
      }
  }
  return types;
}

// E[distance] over m independent copies drawn from `types`.
double expected_distance(const std::map<Dist4, double>& types, std::size_t m) {
  std::vector<std::array<double, 3>> f;
  std::vector<double> w;
  for (const auto& [d, p] : types) {
    f.push_back(walsh(d));
    w.push_back(p);
  }
  std::vector<double> fact(m + 1, 1);
  for (std::size_t i = 1; i <= m; ++i) fact[i] = fact[i - 1] * static_cast<double>(i);
  double total = 0;
  std::function<void(std::size_t, std::size_t, double, std::array<double, 3>)> rec =
      [&](std::size_t t, std::size_t left, double weight, std::array<double, 3> acc) {
        if (t + 1 == f.size()) {
          for (int a = 0; a < 3; ++a) acc[a] *= std::pow(f[t][a], static_cast<double>(left));
          weight *= std::pow(w[t], static_cast<double>(left)) / fact[left];
          total += fact[m] * weight * distance_from_walsh(acc);
          return;
        }
        std::array<double, 3> a2 = acc;
        double w2 = weight;
        for (std::size_t c = 0; c <= left; ++c) {
          rec(t + 1, left - c, w2 / fact[c], a2);
          for (int a = 0; a < 3; ++a) a2[a] *= f[t][a];
          w2 *= w[t];
        }
      };
  rec(0, m, 1.0, {1, 1, 1});
  return total;
}

// Monte Carlo over real amplified keys: for each sampled (pk, seed) the
// conditional output distribution is exact, by enumerating the keys that
// share each pk_i and using linearity of the extractor.
struct McEstimate {
  double mean = 0;
  double stderr_ = 0;
  std::size_t hash_mismatches = 0;
};

McEstimate monte_carlo(const DqrParams& q, const Instance& x, std::size_t samples) {
  auto base = std::make_shared<const DqrFamily>(q);
  AmplifiedFamily amp(base, Ratio{1, 2}, 2, 3);
  const std::size_t m = amp.repetitions();
  Rng rng(91);
  McEstimate est;
  double sum = 0, sum2 = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    KeyPair k = amp.keygen(x, rng);
    const ExtractorSeed& seed = *k.pk.extractor;
    const BitVector zero_out = lhl_extract(seed, BitVector(amp.in_bits()));
    Dist4 conv{1, 0, 0, 0};
    std::vector<HashValue> actual;
    for (std::size_t i = 0; i < m; ++i) {
      actual.push_back(base->hash(x, HashKey{{k.hk.parts[i]}, std::nullopt}));
      std::array<int, 4> counts{};
      for (unsigned long hk = 0; hk < 77; ++hk) {
        if (pow_mod(q.g, hk, 77) != k.pk.parts[i]) continue;
        std::vector<HashValue> vals(m, HashValue(base->hash_bytes(), 0));
        vals[i] = base->hash(x, HashKey{{hk}, std::nullopt});
        BitVector out = lhl_extract(seed, amp.gather(vals));
        out ^= zero_out;
        ++counts[(out.get(0) ? 1 : 0) | (out.get(1) ? 2 : 0)];
      }
      const double tot = counts[0] + counts[1] + counts[2] + counts[3];
      Dist4 next{};
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) next[a ^ b] += conv[a] * counts[b] / tot;
      conv = next;
    }
    // The model must reproduce the real hash for the sampled key.
    BitVector model = lhl_extract(seed, amp.gather(actual));
    if (model.to_bytes() != amp.hash(x, k.hk)) ++est.hash_mismatches;
    const double d = oracle::distance_from_uniform({conv.begin(), conv.end()});
    sum += d;
    sum2 += d * d;
  }
  const double n = static_cast<double>(samples);
  est.mean = sum / n;
  est.stderr_ = std::sqrt(std::max(0.0, sum2 / n - est.mean * est.mean) / n);
  return est;
}

Verdict amplifier_smoothness() {
  Rng rng(10);
  const DqrParams q = dqr_pg(Profile::toy, rng);
  const std::size_t m = amplifier_repetitions(Ratio{1, 2}, 2, 3);
  const double bound = std::ldexp(1.0, -3);
  double worst = 0;
  unsigned long worst_r = 0;
  std::map<std::map<Dist4, double>, double> cache;
  double exact_for_mc = 0;
  for (unsigned long r = 0; r < 77; ++r) {
    const ResSample s = dqr_make_instance(q, r, 1);
    auto types = copy_types(q.g.get_ui(), s.x.get_ui(), 77);
    auto it = cache.find(types);
    if (it == cache.end()) it = cache.emplace(types, expected_distance(types, m)).first;
    if (it->second > worst) {
      worst = it->second;
      worst_r = r;
    }
    if (r == 5) exact_for_mc = it->second;
  }
  const ResSample mc_x = dqr_make_instance(q, 5, 1);
  const McEstimate mc = monte_carlo(q, Instance{{mc_x.x}}, 4000);
  const bool mc_agrees = std::abs(mc.mean - exact_for_mc) <= 4 * mc.stderr_ + 1e-9;
  return {m == 8 && worst <= bound && mc_agrees && mc.hash_mismatches == 0,
          fmt("m=%zu, exact E[distance] worst over smooth x = %.6f (r=%lu), bound %.3f; "
              "Monte Carlo on real keys at r=5: %.6f +- %.6f vs exact %.6f",
              m, worst, worst_r, bound, mc.mean, mc.stderr_, exact_for_mc)};
}

// ---------------------------------------------------------------------------
// 10: the permutation sampler

Verdict gamma_contract() {
  Rng rng(11);
  std::size_t bad = 0;
  for (int t = 0; t < 10000; ++t) {
    const std::size_t n = 1 + rng.below(12);
    const std::size_t h = rng.below(n + 1);
    const auto b1 = random_subset(n, h, rng);
    const auto b2 = random_subset(n, h, rng);
    const Permutation pi = gamma_sample(n, b1, b2, rng);
    std::set<std::size_t> image;
    for (std::size_t i : b1) image.insert(pi.at(i));
    if (!is_permutation(pi, n) || image != std::set<std::size_t>(b2.begin(), b2.end())) ++bad;
  }
  std::map<Permutation, int> counts;
  const int draws = 10000;
  for (int t = 0; t < draws; ++t) ++counts[gamma_sample(4, {0, 2}, {1, 3}, rng)];
  double chi2 = 0;
  bool valid = counts.size() == 4;
  for (const auto& [pi, c] : counts) {
    valid = valid && ((pi[0] == 1 && pi[2] == 3) || (pi[0] == 3 && pi[2] == 1));
    const double e = draws / 4.0;
    chi2 += (c - e) * (c - e) / e;
  }
  const double critical = 16.266;  // chi-square, 3 degrees of freedom, p = 0.001
  return {bad == 0 && valid && chi2 < critical,
          fmt("%zu/10000 draws violate pi(B1)=B2; n=4 h=2: %zu permutations seen, chi-square "
              "%.3f < %.3f",
              bad, counts.size(), chi2, critical)};
}

// ---------------------------------------------------------------------------
// 11: wire determinism

bool tcp_matches_memory(std::uint64_t seed, Assumption a) {
  ProtocolConfig c;
  c.n = 4;
  c.h = 2;
  c.assumption = a;
  Rng inputs = Rng(seed).derive("inputs");
  const auto msgs = random_messages(c.n, c.msg_len, inputs);
  const Rng rng(seed);

  Receiver mr(c, {0, 3}, rng.derive("receiver"));
  Sender ms(c, msgs, rng.derive("sender"));
  SessionResult mem = run_memory_session(mr, ms, 10s);

  std::promise<std::uint16_t> port;
  auto ready = port.get_future();
  SessionResult sender_view;
  std::thread t([&] {
    Sender s(c, msgs, rng.derive("sender"));
    sender_view = run_transport(s, Role::sender, "tcp:127.0.0.1:0", 10s,
                                [&](std::uint16_t p) { port.set_value(p); });
  });
  Receiver r(c, {0, 3}, rng.derive("receiver"));
  const std::uint16_t p = ready.get();
  SessionResult tcp = run_transport(r, Role::receiver, "tcp:127.0.0.1:" + std::to_string(p), 10s);
  t.join();
  return mem.status == SessionStatus::completed && tcp.status == SessionStatus::completed &&
         mem.transcript == tcp.transcript && sender_view.transcript == tcp.transcript &&
         mem.output == tcp.output;
}

Verdict wire_determinism() {
  Rng rng(12);
  std::size_t bad = 0;
  for (int t = 0; t < 10000; ++t) {
    const FlowMessage m = testgen::random_flow(rng);
    const Bytes f = encode_frame(m);
    try {
      const FlowMessage back = decode_frame(f);
      if (!(back == m) || encode_frame(back) != f) ++bad;
    } catch (const std::exception&) {
      ++bad;
    }
  }
  std::size_t same = 0, sessions = 0;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    ++sessions;
    if (tcp_matches_memory(seed, kAssumptions[seed % 3])) ++same;
  }
  return {bad == 0 && same == sessions,
          fmt("%zu/10000 random frames failed to roundtrip; mem: and tcp: transcripts equal in "
              "%zu/%zu seeded sessions",
              bad, same, sessions)};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* title, const Verdict& v, double secs) {
    std::printf("%s C%d %s: %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", id, title, v.detail.c_str(),
                secs);
    std::fflush(stdout);
    if (!v.pass) ++failures;
  };
  auto timed = [&](int id, const char* title, const std::function<Verdict()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = f();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    report(id, title, v, seconds_since(t0));
  };

  SessionSweep sweep;
  try {
    sweep = sweep_sessions();
  } catch (const std::exception& e) {
    std::printf("session sweep threw: %s\n", e.what());
  }
  report(1, "end-to-end correctness",
         {sweep.runs == 600 && sweep.correct == sweep.runs && sweep.seconds < 60,
          fmt("%zu/%zu toy sessions (DDH, DQR, DNR; n<=6, K=8, 16-byte messages) output exactly "
              "the chosen messages in %.1f s (limit 60 s)",
              sweep.correct, sweep.runs, sweep.seconds)},
         sweep.seconds);
  report(2, "six flows",
         {sweep.runs == 600 && sweep.six_flows == sweep.runs,
          fmt("%zu/%zu completed transcripts carry exactly 6 flows and nothing else",
              sweep.six_flows, sweep.runs)},
         0);

  timed(3, "projection identity", projection_identity);
  timed(4, "exact DDH smoothness", ddh_enumeration);
  timed(5, "guessing bound 1/2", guessing_bound);

  EscapeRun esc;
  bool esc_ok = true;
  std::string esc_error;
  try {
    esc = escape_run();
  } catch (const std::exception& e) {
    esc_ok = false;
    esc_error = e.what();
  }
  {
    const double p = std::ldexp(1.0, -8);
    const double sigma = std::sqrt(p * (1 - p) / 100000.0);
    const EscapeStats& s = esc.stats;
    bool enum_ok = !esc.enums.empty();
    std::string enum_text;
    for (const auto& e : esc.enums) {
      enum_ok = enum_ok && e.escapes == 1 && e.mismatches == 0 && e.coins == (std::size_t{1} << e.k_cut);
      enum_text += fmt(" K=%zu,d=%zu:%zu/%zu", e.k_cut, e.d, e.escapes, e.coins);
    }
    const bool ok = esc_ok && s.trials == 100000 && std::abs(s.rate() - p) <= 3 * sigma &&
                    s.escape_mismatch == 0 && enum_ok && esc.seconds < 120;
    report(6, "cut-and-choose escape rate",
           {ok, esc_ok ? fmt("K=8 d=2: %zu escapes in %zu trials, rate %.6f vs %.6f +- %.6f; "
                             "escape/coin mismatches %zu; enumeration escapes",
                             s.escapes, s.trials, s.rate(), p, 3 * sigma, s.escape_mismatch) +
                             enum_text + fmt("; %.1f s (limit 120 s)", esc.seconds)
                       : "exception: " + esc_error},
           esc.seconds);
    report(7, "detection completeness",
           {esc_ok && s.illegal_chosen > 0 && s.detected == s.illegal_chosen,
            fmt("sender aborted in %zu of %zu trials that opened an illegal vector", s.detected,
                s.illegal_chosen)},
           0);
  }

  timed(8, "extraction through Cheat", extraction);
  timed(9, "amplifier smoothness", amplifier_smoothness);
  timed(10, "permutation sampler", gamma_contract);
  timed(11, "wire determinism", wire_determinism);

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
