#include "otframe/commit.hpp"

#include <algorithm>
#include <mutex>
#include <string>

namespace otframe {

CommitKey derive_commit_key(const SchnorrGroup& group, std::string_view seed) {
  for (std::uint32_t counter = 0; counter < 1024; ++counter) {
    Bytes input(seed.begin(), seed.end());
    for (int s = 24; s >= 0; s -= 8) input.push_back(static_cast<std::uint8_t>(counter >> s));
    // Two digests give enough bits to make the reduction mod q close to uniform.
    Bytes wide = sha256(input);
    input.push_back(0xFF);
    Bytes second = sha256(input);
    wide.insert(wide.end(), second.begin(), second.end());
    const BigUint e = canonical_decode(wide) % group.q;
    if (e == 0) continue;
    BigUint h = pow_mod(group.g, e, group.p);
    if (h != 1) return {group, h};
  }
  throw GenerationError("derive_commit_key: no usable exponent");
}

const CommitKey& profile_commit_key(Profile profile) {
  static const CommitKey toy = derive_commit_key(SchnorrGroup{23, 11, 2});
  if (profile == Profile::toy) return toy;
  static std::once_flag once;
  static CommitKey production;
  std::call_once(once, [] {
    Rng rng = Rng(0).derive("otframe/commit-group/v1");
    production = derive_commit_key(gen_schnorr_group(2048, 256, rng));
  });
  return production;
}

namespace {

void check_range(const CommitKey& ck, const BigUint& m, const BigUint& r) {
  if (m < 0 || r < 0 || m >= ck.group.q || r >= ck.group.q)
    throw ParameterError("commit: m and r must lie in Z_q");
}

bool in_range(const CommitKey& ck, const Decommitment& d) {
  return d.m >= 0 && d.r >= 0 && d.m < ck.group.q && d.r < ck.group.q;
}

}  // namespace

Commitment pedersen_commit(const CommitKey& ck, const BigUint& m, const BigUint& r) {
  check_range(ck, m, r);
  const auto& G = ck.group;
  BigUint c = pow_mod(G.g, m, G.p) * pow_mod(ck.h, r, G.p) % G.p;
  return {CommitScheme::hiding, {c}};
}

bool pedersen_verify(const CommitKey& ck, const Commitment& c, const Decommitment& d) {
  if (c.scheme != CommitScheme::hiding || c.parts.size() != 1 || !in_range(ck, d)) return false;
  return pedersen_commit(ck, d.m, d.r) == c;
}

Commitment elgamal_commit(const CommitKey& ck, const BigUint& m, const BigUint& r) {
  check_range(ck, m, r);
  const auto& G = ck.group;
  BigUint c1 = pow_mod(G.g, r, G.p);
  BigUint c2 = pow_mod(ck.h, r, G.p) * pow_mod(G.g, m, G.p) % G.p;
  return {CommitScheme::binding, {c1, c2}};
}

bool elgamal_verify(const CommitKey& ck, const Commitment& c, const Decommitment& d) {
  if (c.scheme != CommitScheme::binding || c.parts.size() != 2 || !in_range(ck, d)) return false;
  return elgamal_commit(ck, d.m, d.r) == c;
}

Commitment commit(const CommitKey& ck, CommitScheme scheme, const BigUint& m, const BigUint& r) {
  return scheme == CommitScheme::hiding ? pedersen_commit(ck, m, r) : elgamal_commit(ck, m, r);
}

bool verify(const CommitKey& ck, const Commitment& c, const Decommitment& d) {
  return c.scheme == CommitScheme::hiding ? pedersen_verify(ck, c, d) : elgamal_verify(ck, c, d);
}

bool well_formed(const CommitKey& ck, const Commitment& c) {
  const std::size_t want = c.scheme == CommitScheme::hiding ? 1 : 2;
  if (c.parts.size() != want) return false;
  for (const auto& e : c.parts)
    if (!ck.group.contains(e)) return false;
  return true;
}

// ---------------------------------------------------------------------------

std::size_t coin_chunk_bits(const CommitKey& ck) { return bit_length(ck.group.q) - 1; }

std::size_t coin_chunk_count(const CommitKey& ck, std::size_t coin_bits) {
  const std::size_t w = coin_chunk_bits(ck);
  return (coin_bits + w - 1) / w;
}

std::vector<BigUint> coin_to_chunks(const CommitKey& ck, const CoinBits& coin) {
  const std::size_t w = coin_chunk_bits(ck);
  std::vector<BigUint> out;
  for (std::size_t start = 0; start < coin.size(); start += w) {
    BigUint v = 0;
    for (std::size_t i = start; i < std::min(coin.size(), start + w); ++i) {
      if (coin[i] > 1) throw ParameterError("coin bits must be 0 or 1");
      v = v * 2 + coin[i];
    }
    out.push_back(v);
  }
  return out;
}

CoinBits chunks_to_coin(const CommitKey& ck, const std::vector<BigUint>& chunks,
                        std::size_t coin_bits) {
  const std::size_t w = coin_chunk_bits(ck);
  if (chunks.size() != coin_chunk_count(ck, coin_bits))
    throw ParameterError("chunks_to_coin: wrong chunk count");
  CoinBits coin(coin_bits, 0);
  for (std::size_t c = 0; c < chunks.size(); ++c) {
    const std::size_t start = c * w;
    const std::size_t width = std::min(w, coin_bits - start);
    if (chunks[c] < 0 || bit_length(chunks[c]) > width)
      throw ParameterError("chunks_to_coin: chunk wider than its slot");
    for (std::size_t i = 0; i < width; ++i)
      coin[start + i] = mpz_tstbit(chunks[c].get_mpz_t(), width - 1 - i) ? 1 : 0;
  }
  return coin;
}

CoinCommitment commit_coin(const CommitKey& ck, CommitScheme scheme, const CoinBits& coin,
                           Rng& rng) {
  CoinCommitment out;
  for (const BigUint& m : coin_to_chunks(ck, coin)) {
    BigUint r = rng.below(ck.group.q);
    out.commitments.push_back(commit(ck, scheme, m, r));
    out.openings.push_back({m, r});
  }
  return out;
}

std::optional<CoinBits> open_coin(const CommitKey& ck, CommitScheme scheme,
                                  const std::vector<Commitment>& commitments,
                                  const std::vector<Decommitment>& openings,
                                  std::size_t coin_bits) {
  const std::size_t count = coin_chunk_count(ck, coin_bits);
  if (commitments.size() != count || openings.size() != count) return std::nullopt;
  std::vector<BigUint> chunks;
  for (std::size_t c = 0; c < count; ++c) {
    if (commitments[c].scheme != scheme || !verify(ck, commitments[c], openings[c]))
      return std::nullopt;
    chunks.push_back(openings[c].m);
  }
  try {
    return chunks_to_coin(ck, chunks, coin_bits);
  } catch (const ParameterError&) {
    return std::nullopt;
  }
}

}  // namespace otframe
