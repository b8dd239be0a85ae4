#pragma once
//
// Arbitrary-precision modular arithmetic, prime/modulus generation and the
// canonical byte encodings shared by every instantiation.
//

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "otframe/errors.hpp"

namespace otframe {

// Non-negative by convention; every function here rejects negative inputs.
using BigUint = mpz_class;
using Bytes = std::vector<std::uint8_t>;

/// Deterministic-when-seeded random source (ChaCha20 keystream).
///
/// A seeded Rng reproduces the same draw sequence on every run; the default
/// constructor keys the stream from OS entropy. Instances are single-owner.
class Rng {
 public:
  static constexpr std::size_t kSeedBytes = 32;
  using Seed = std::array<std::uint8_t, kSeedBytes>;

  Rng();  // OS entropy
  explicit Rng(std::uint64_t seed);
  explicit Rng(const Seed& key);

  // Independent child stream keyed by (this key, label). Does not consume draws.
  Rng derive(std::string_view label) const;
  Rng derive(std::uint64_t index) const;

  void fill(std::span<std::uint8_t> out);
  Seed next_seed();
  std::uint64_t next_u64();
  bool next_bit();
  // Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  BigUint below(const BigUint& bound);
  // Uniform odd/even-agnostic integer with exactly `bits` bits (top bit set).
  BigUint exact_bits(std::size_t bits);
  // Uniform element of Z*_m.
  BigUint unit_mod(const BigUint& m);

 private:
  void refill();

  Seed key_{};
  std::uint64_t block_ = 0;
  std::array<std::uint8_t, 512> buf_{};
  std::size_t pos_ = 512;
};

BigUint pow_mod(const BigUint& base, const BigUint& exp, const BigUint& modulus);
BigUint inv_mod(const BigUint& a, const BigUint& modulus);
BigUint gcd(const BigUint& a, const BigUint& b);
std::size_t bit_length(const BigUint& x);
std::size_t byte_length(const BigUint& x);

// Jacobi symbol (a|n) for odd n >= 3.
int jacobi(const BigUint& a, const BigUint& n);

// Trial division plus Miller-Rabin with bases drawn from `rng`.
bool is_probable_prime(const BigUint& n, Rng& rng, int rounds = 64);

struct SchnorrGroup {
  BigUint p;  // prime modulus
  BigUint q;  // prime order of the subgroup, q | p-1
  BigUint g;  // generator of the order-q subgroup

  bool contains(const BigUint& element) const;  // 0 < e < p and e^q = 1
  friend bool operator==(const SchnorrGroup&, const SchnorrGroup&) = default;
};

// Checks all group invariants (primality via `rng`-driven Miller-Rabin).
bool is_valid_group(const SchnorrGroup& group, Rng& rng);
SchnorrGroup gen_schnorr_group(std::size_t bits_p, std::size_t bits_q, Rng& rng);

enum class ModulusForm : std::uint8_t { dnr, dqr };

struct RsaLikeModulus {
  BigUint p;
  BigUint q;
  BigUint n;
  ModulusForm form;
};

// Form constraints only (primality is checked separately by is_valid_modulus).
bool satisfies_form(const BigUint& p, const BigUint& q, ModulusForm form);
bool is_valid_modulus(const RsaLikeModulus& m, Rng& rng);
RsaLikeModulus make_modulus(const BigUint& p, const BigUint& q, ModulusForm form);
RsaLikeModulus gen_modulus(std::size_t bits_prime, ModulusForm form, Rng& rng);

// Big-endian, zero-padded to exactly byte_len bytes.
Bytes canonical_encode(const BigUint& x, std::size_t byte_len);
BigUint canonical_decode(std::span<const std::uint8_t> bytes);
// Minimal big-endian encoding (zero encodes as the empty string).
Bytes minimal_encode(const BigUint& x);

Bytes sha256(std::span<const std::uint8_t> data);

}  // namespace otframe
