#pragma once
//
// Pedersen (perfectly hiding) and ElGamal-style (perfectly binding)
// commitments over a Schnorr group, and the chunked commitment of coin
// strings longer than the group order allows.
//

#include <string_view>
#include <utility>
#include <vector>

#include "otframe/groupmath.hpp"
#include "otframe/sph.hpp"

namespace otframe {

struct CommitKey {
  SchnorrGroup group;
  BigUint h;  // second generator, discrete log unknown to everyone
  friend bool operator==(const CommitKey&, const CommitKey&) = default;
};

enum class CommitScheme : std::uint8_t { hiding = 1, binding = 2 };

struct Commitment {
  CommitScheme scheme = CommitScheme::hiding;
  std::vector<BigUint> parts;  // one element (hiding) or two (binding)
  friend bool operator==(const Commitment&, const Commitment&) = default;
};

struct Decommitment {
  BigUint m;
  BigUint r;
  friend bool operator==(const Decommitment&, const Decommitment&) = default;
};

inline constexpr std::string_view kCommitKeySeed = "otframe/commit-key/v1";

// h = g^e with e hashed from `seed` (counter appended until e != 0 mod q).
CommitKey derive_commit_key(const SchnorrGroup& group, std::string_view seed = kCommitKeySeed);

// Fixed public commitment group per profile: toy (23, 11, 2); production is
// generated once from a public seed and cached.
const CommitKey& profile_commit_key(Profile profile);

Commitment pedersen_commit(const CommitKey& ck, const BigUint& m, const BigUint& r);
bool pedersen_verify(const CommitKey& ck, const Commitment& c, const Decommitment& d);
Commitment elgamal_commit(const CommitKey& ck, const BigUint& m, const BigUint& r);
bool elgamal_verify(const CommitKey& ck, const Commitment& c, const Decommitment& d);

Commitment commit(const CommitKey& ck, CommitScheme scheme, const BigUint& m, const BigUint& r);
bool verify(const CommitKey& ck, const Commitment& c, const Decommitment& d);
// Group membership of every element and the right arity for the scheme.
bool well_formed(const CommitKey& ck, const Commitment& c);

// ---------------------------------------------------------------------------
// Coin strings: one bit per byte (0 or 1), committed in chunks of
// floor(log2 q) bits, most significant bit first within each chunk.

using CoinBits = std::vector<std::uint8_t>;

std::size_t coin_chunk_bits(const CommitKey& ck);
std::size_t coin_chunk_count(const CommitKey& ck, std::size_t coin_bits);
std::vector<BigUint> coin_to_chunks(const CommitKey& ck, const CoinBits& coin);
CoinBits chunks_to_coin(const CommitKey& ck, const std::vector<BigUint>& chunks,
                        std::size_t coin_bits);

struct CoinCommitment {
  std::vector<Commitment> commitments;
  std::vector<Decommitment> openings;
};

CoinCommitment commit_coin(const CommitKey& ck, CommitScheme scheme, const CoinBits& coin,
                           Rng& rng);
// Returns the coin if every chunk opens correctly and fits its width.
std::optional<CoinBits> open_coin(const CommitKey& ck, CommitScheme scheme,
                                  const std::vector<Commitment>& commitments,
                                  const std::vector<Decommitment>& openings,
                                  std::size_t coin_bits);

}  // namespace otframe
