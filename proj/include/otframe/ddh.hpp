#pragma once
//
// DDH-based smooth projective hash family over a Schnorr group. Smoothness
// is exact, so this family is used directly without amplification.
//

#include "otframe/groupmath.hpp"
#include "otframe/sph.hpp"

namespace otframe {

struct DdhParams {
  SchnorrGroup group;
  friend bool operator==(const DdhParams&, const DdhParams&) = default;
};

// (g^a, g^b, g^ab) for projective, (g^a, g^b, g^c) with c != ab for smooth.
struct DdhInstance {
  BigUint alpha;
  BigUint beta;
  BigUint gamma;
  friend bool operator==(const DdhInstance&, const DdhInstance&) = default;
};

struct DdhWitness {
  BigUint a;
  BigUint b;
  friend bool operator==(const DdhWitness&, const DdhWitness&) = default;
};

struct DdhSample {
  DdhInstance x;
  DdhWitness w;
  InstanceKind kind;
};

struct DdhKeyPair {
  BigUint hk;
  BigUint pk;
};

// Toy: p = 23, q = 11 with a random generator. Production: |p| = 2048, |q| = 256.
DdhParams ddh_pg(Profile profile, Rng& rng);
DdhParams ddh_pg(std::string_view profile, Rng& rng);

DdhSample ddh_is(const DdhParams& params, int delta, Rng& rng);
// Deterministic builders (exponents reduced mod q).
DdhSample ddh_make_projective(const DdhParams& params, const BigUint& a, const BigUint& b);
DdhSample ddh_make_smooth(const DdhParams& params, const BigUint& a, const BigUint& b,
                          const BigUint& c);

InstanceKind ddh_di(const DdhParams& params, const DdhInstance& x, const DdhWitness& w);

DdhKeyPair ddh_kg(const DdhParams& params, const DdhInstance& x, Rng& rng);
DdhKeyPair ddh_kg_with(const DdhParams& params, const DdhInstance& x, const BigUint& u,
                       const BigUint& v);
BigUint ddh_hash(const DdhParams& params, const DdhInstance& x, const BigUint& hk);
BigUint ddh_phash(const DdhParams& params, const DdhInstance& x, const BigUint& pk,
                  const DdhWitness& w);

class DdhFamily final : public HashFamily {
 public:
  explicit DdhFamily(DdhParams params) : params_(std::move(params)) {}

  const DdhParams& params() const { return params_; }

  static Instance to_generic(const DdhInstance& x) { return {{x.alpha, x.beta, x.gamma}}; }
  static Witness to_generic(const DdhWitness& w) { return {{w.a, w.b}}; }
  static DdhInstance instance_of(const Instance& x);
  static DdhWitness witness_of(const Witness& w);

  Assumption assumption() const override { return Assumption::ddh; }
  InstancePair sample(InstanceKind kind, Rng& rng) const override;
  InstanceKind distinguish(const Instance& x, const Witness& w) const override;
  KeyPair keygen(const Instance& x, Rng& rng) const override;
  HashValue hash(const Instance& x, const HashKey& hk) const override;
  HashValue project(const Instance& x, const ProjectionKey& pk, const Witness& w) const override;
  bool accepts(const Instance& x) const override;
  bool accepts(const Witness& w) const override;
  bool accepts(const ProjectionKey& pk) const override;
  std::size_t hash_bytes() const override { return byte_length(params_.group.p); }
  std::size_t key_arity() const override { return 1; }

 private:
  DdhParams params_;
};

}  // namespace otframe
