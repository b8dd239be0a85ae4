#pragma once
//
// Smooth projective hashing: the per-instance family interface, the
// h-projective/t-smooth composite built from it, and the leftover-hash
// amplifier that turns an epsilon-universal family into a smooth one.
//

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "otframe/groupmath.hpp"

namespace otframe {

enum class Assumption : std::uint8_t { ddh = 1, dnr = 2, dqr = 3 };
enum class InstanceKind : std::uint8_t { projective = 0, smooth = 1 };
enum class Profile : std::uint8_t { toy = 0, production = 1 };

// Throw ParameterError on unknown names.
Assumption parse_assumption(std::string_view name);
Profile parse_profile(std::string_view name);
std::string_view to_string(Assumption a);
std::string_view to_string(Profile p);

struct Instance {
  std::vector<BigUint> parts;
  friend bool operator==(const Instance&, const Instance&) = default;
};

struct Witness {
  std::vector<BigUint> parts;
  friend bool operator==(const Witness&, const Witness&) = default;
};

struct InstancePair {
  Instance x;
  Witness w;
  InstanceKind kind;
};

using InstanceVector = std::vector<InstancePair>;
using HashValue = Bytes;

// ---------------------------------------------------------------------------
// GF(2) vectors and matrices

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t bits);

  // Bit i is bit (7 - i % 8) of byte i / 8 (most significant bit first).
  static BitVector from_bytes(std::span<const std::uint8_t> bytes, std::size_t bits);
  Bytes to_bytes() const;

  std::size_t size() const { return bits_; }
  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i, bool v);
  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  BitVector& operator^=(const BitVector& other);
  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return stride_; }
  bool get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool v);
  const std::uint64_t* row(std::size_t r) const { return data_.data() + r * stride_; }
  std::uint64_t* row(std::size_t r) { return data_.data() + r * stride_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> data_;
};

/// Seed of one affine extractor y -> A*y ^ b over GF(2).
///
/// A is not stored: it is the row-major expansion of `matrix_seed` through
/// the ChaCha20 stream, so a seed is 32 bytes plus `out_bits` of offset no
/// matter how long the input is.
struct ExtractorSeed {
  std::size_t in_bits = 0;
  std::size_t out_bits = 0;
  Rng::Seed matrix_seed{};
  BitVector offset;

  static ExtractorSeed sample(std::size_t in_bits, std::size_t out_bits, Rng& rng);
  BitMatrix matrix() const;
  friend bool operator==(const ExtractorSeed&, const ExtractorSeed&) = default;
};

// output = A * input ^ b over GF(2).
BitVector lhl_extract(const BitMatrix& a, const BitVector& b, const BitVector& input);
// Same map, with A streamed from the seed row by row.
BitVector lhl_extract(const ExtractorSeed& seed, const BitVector& input);

// ---------------------------------------------------------------------------
// Keys and the family interface

struct HashKey {
  std::vector<BigUint> parts;
  std::optional<ExtractorSeed> extractor;
  friend bool operator==(const HashKey&, const HashKey&) = default;
};

struct ProjectionKey {
  std::vector<BigUint> parts;
  std::optional<ExtractorSeed> extractor;
  friend bool operator==(const ProjectionKey&, const ProjectionKey&) = default;
};

struct KeyPair {
  HashKey hk;
  ProjectionKey pk;
};

/// One smooth (or epsilon-universal) projective hash family with a
/// distinguisher, for a fixed family parameter.
///
/// Hash values are fixed-width byte strings (hash_bytes()), so that every
/// consumer can treat them uniformly.
class HashFamily {
 public:
  virtual ~HashFamily() = default;

  virtual Assumption assumption() const = 0;
  virtual InstancePair sample(InstanceKind kind, Rng& rng) const = 0;
  // Throws InvalidWitness when (x, w) is in neither relation.
  virtual InstanceKind distinguish(const Instance& x, const Witness& w) const = 0;
  virtual KeyPair keygen(const Instance& x, Rng& rng) const = 0;
  virtual HashValue hash(const Instance& x, const HashKey& hk) const = 0;
  virtual HashValue project(const Instance& x, const ProjectionKey& pk,
                            const Witness& w) const = 0;

  // Structural checks for values received from the other party.
  virtual bool accepts(const Instance& x) const = 0;
  virtual bool accepts(const Witness& w) const = 0;
  virtual bool accepts(const ProjectionKey& pk) const = 0;

  virtual std::size_t hash_bytes() const = 0;
  virtual std::size_t key_arity() const = 0;

  // delta = 0 samples a projective instance, delta = 1 a smooth one.
  InstancePair sample(int delta, Rng& rng) const;
};

using FamilyPtr = std::shared_ptr<const HashFamily>;

/// The n-instance family with h projective and t = n - h smooth entries.
class CompositeFamily {
 public:
  CompositeFamily(FamilyPtr base, std::size_t n, std::size_t h);

  std::size_t n() const { return n_; }
  std::size_t h() const { return h_; }
  std::size_t t() const { return n_ - h_; }
  const HashFamily& base() const { return *base_; }
  const FamilyPtr& base_ptr() const { return base_; }

  // Entries 0..h-1 projective, h..n-1 smooth. Entry j is drawn from a child
  // stream keyed by the j-th 32-byte seed taken from `rng`.
  InstanceVector sample(Rng& rng) const;
  // All n entries projective.
  InstanceVector cheat(Rng& rng) const;

  std::vector<InstanceKind> distinguish(const std::vector<Instance>& xs,
                                        const std::vector<Witness>& ws) const;
  KeyPair keygen(const Instance& x, Rng& rng) const { return base_->keygen(x, rng); }
  HashValue hash(const Instance& x, const HashKey& hk) const { return base_->hash(x, hk); }
  HashValue project(const Instance& x, const ProjectionKey& pk, const Witness& w) const {
    return base_->project(x, pk, w);
  }

 private:
  FamilyPtr base_;
  std::size_t n_;
  std::size_t h_;
};

CompositeFamily sphdhc_from_sphdh(FamilyPtr base, std::size_t n, std::size_t h);

// ---------------------------------------------------------------------------
// Amplification

struct Ratio {
  std::uint64_t num = 1;
  std::uint64_t den = 2;
};

// m = ceil((out_bits + 2 sigma) / log2(1 / epsilon)).
std::size_t amplifier_repetitions(Ratio epsilon, std::size_t out_bits, std::size_t sigma);

class AmplifiedFamily final : public HashFamily {
 public:
  AmplifiedFamily(FamilyPtr base, Ratio epsilon, std::size_t out_bits, std::size_t sigma);

  Assumption assumption() const override { return base_->assumption(); }
  InstancePair sample(InstanceKind kind, Rng& rng) const override {
    return base_->sample(kind, rng);
  }
  InstanceKind distinguish(const Instance& x, const Witness& w) const override {
    return base_->distinguish(x, w);
  }
  KeyPair keygen(const Instance& x, Rng& rng) const override;
  HashValue hash(const Instance& x, const HashKey& hk) const override;
  HashValue project(const Instance& x, const ProjectionKey& pk,
                    const Witness& w) const override;
  bool accepts(const Instance& x) const override { return base_->accepts(x); }
  bool accepts(const Witness& w) const override { return base_->accepts(w); }
  bool accepts(const ProjectionKey& pk) const override;
  std::size_t hash_bytes() const override { return (out_bits_ + 7) / 8; }
  std::size_t key_arity() const override { return reps_ * base_->key_arity(); }

  const HashFamily& base() const { return *base_; }
  std::size_t repetitions() const { return reps_; }
  std::size_t out_bits() const { return out_bits_; }
  std::size_t in_bits() const { return reps_ * base_->hash_bytes() * 8; }
  Ratio epsilon() const { return epsilon_; }

  // Concatenated base hash values -> extractor input.
  BitVector gather(const std::vector<HashValue>& base_values) const;

 private:
  FamilyPtr base_;
  Ratio epsilon_;
  std::size_t out_bits_;
  std::size_t sigma_;
  std::size_t reps_;
};

std::shared_ptr<const AmplifiedFamily> amplify_uphdh_to_sphdh(FamilyPtr base, Ratio epsilon,
                                                              std::size_t out_bits,
                                                              std::size_t sigma);

}  // namespace otframe
