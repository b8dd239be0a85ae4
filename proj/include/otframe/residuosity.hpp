#pragma once
//
// N-th residuosity (modulo N^2) and quadratic residuosity (modulo N)
// epsilon-universal projective hash families. Both hash by exponentiation:
// hk is a random exponent, pk = g^hk, Hash = x^hk, pHash = pk^r.
//

#include "otframe/groupmath.hpp"
#include "otframe/sph.hpp"

namespace otframe {

// Prime size used by the production profile; the distinguisher then also
// insists on a modulus of at least 2 * kProductionPrimeBits bits.
inline constexpr std::size_t kProductionPrimeBits = 1024;

// The exponentiation template shared by both families.
struct ExpShape {
  BigUint modulus;    // N^2 or N
  BigUint key_space;  // hk is drawn from [0, key_space)
  BigUint g;
};

struct ExpKeyPair {
  BigUint hk;
  BigUint pk;
};

ExpKeyPair exp_kg(const ExpShape& shape, Rng& rng);
ExpKeyPair exp_kg_with(const ExpShape& shape, const BigUint& hk);
BigUint exp_hash(const ExpShape& shape, const BigUint& x, const BigUint& hk);
BigUint exp_phash(const ExpShape& shape, const BigUint& pk, const BigUint& r);

struct ResWitness {
  BigUint r;
  BigUint v;  // always 0 for the quadratic family
  friend bool operator==(const ResWitness&, const ResWitness&) = default;
};

struct ResSample {
  BigUint x;
  ResWitness w;
  InstanceKind kind;
};

// ---------------------------------------------------------------------------
// N-th residuosity

struct DnrParams {
  Profile profile = Profile::toy;
  BigUint n;
  BigUint g;  // in Z*_{N^2}
  BigUint n_squared() const { return n * n; }
  ExpShape shape() const { return {n * n, n * n, g}; }
  friend bool operator==(const DnrParams&, const DnrParams&) = default;
};

// g = a^{N * T} mod N^2 with T = N^{2 * bitlen(N)}, rejecting g = 1.
BigUint dnr_generator(const RsaLikeModulus& modulus, const BigUint& a);
DnrParams dnr_params(Profile profile, const RsaLikeModulus& modulus, Rng& rng);
// Toy: N = 15. Production: |N| = 2048.
DnrParams dnr_pg(Profile profile, Rng& rng);
DnrParams dnr_pg(std::string_view profile, Rng& rng);

ResSample dnr_is(const DnrParams& params, int delta, Rng& rng);
// v = 0 gives the projective instance g^r, otherwise g^r (1 + vN).
ResSample dnr_make_instance(const DnrParams& params, const BigUint& r, const BigUint& v);
InstanceKind dnr_di(const DnrParams& params, const BigUint& x, const ResWitness& w);

// ---------------------------------------------------------------------------
// Quadratic residuosity

struct DqrParams {
  Profile profile = Profile::toy;
  BigUint n;
  BigUint g;  // in Z*_N with Jacobi symbol 1
  ExpShape shape() const { return {n, n, g}; }
  friend bool operator==(const DqrParams&, const DqrParams&) = default;
};

// g = a^{2T} mod N with T = 2^{bitlen(N)}, rejecting g = 1.
BigUint dqr_generator(const BigUint& n, const BigUint& a);
DqrParams dqr_params(Profile profile, const RsaLikeModulus& modulus, Rng& rng);
// Toy: N = 77. Production: |N| = 2048.
DqrParams dqr_pg(Profile profile, Rng& rng);
DqrParams dqr_pg(std::string_view profile, Rng& rng);

ResSample dqr_is(const DqrParams& params, int delta, Rng& rng);
ResSample dqr_make_instance(const DqrParams& params, const BigUint& r, int delta);
InstanceKind dqr_di(const DqrParams& params, const BigUint& x, const BigUint& r);

// ---------------------------------------------------------------------------
// Family adapters

class ExpFamily : public HashFamily {
 public:
  explicit ExpFamily(ExpShape shape) : shape_(std::move(shape)) {}

  const ExpShape& shape() const { return shape_; }

  KeyPair keygen(const Instance& x, Rng& rng) const override;
  HashValue hash(const Instance& x, const HashKey& hk) const override;
  HashValue project(const Instance& x, const ProjectionKey& pk, const Witness& w) const override;
  bool accepts(const Instance& x) const override;
  bool accepts(const ProjectionKey& pk) const override;
  std::size_t hash_bytes() const override { return byte_length(shape_.modulus); }
  std::size_t key_arity() const override { return 1; }

 protected:
  bool is_unit(const BigUint& e) const;

  ExpShape shape_;
};

class DnrFamily final : public ExpFamily {
 public:
  explicit DnrFamily(DnrParams params) : ExpFamily(params.shape()), params_(std::move(params)) {}

  const DnrParams& params() const { return params_; }

  Assumption assumption() const override { return Assumption::dnr; }
  InstancePair sample(InstanceKind kind, Rng& rng) const override;
  InstanceKind distinguish(const Instance& x, const Witness& w) const override;
  using ExpFamily::accepts;
  bool accepts(const Witness& w) const override;

 private:
  DnrParams params_;
};

class DqrFamily final : public ExpFamily {
 public:
  explicit DqrFamily(DqrParams params) : ExpFamily(params.shape()), params_(std::move(params)) {}

  const DqrParams& params() const { return params_; }

  Assumption assumption() const override { return Assumption::dqr; }
  InstancePair sample(InstanceKind kind, Rng& rng) const override;
  InstanceKind distinguish(const Instance& x, const Witness& w) const override;
  bool accepts(const Instance& x) const override;
  using ExpFamily::accepts;
  bool accepts(const Witness& w) const override;

 private:
  DqrParams params_;
};

}  // namespace otframe
