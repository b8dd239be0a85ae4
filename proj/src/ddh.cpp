#include "otframe/ddh.hpp"

namespace otframe {

DdhParams ddh_pg(Profile profile, Rng& rng) {
  if (profile == Profile::production) return {gen_schnorr_group(2048, 256, rng)};
  SchnorrGroup g{23, 11, 1};
  for (int attempt = 0; attempt < 1000; ++attempt) {
    BigUint r = 2 + rng.below(BigUint(g.p - 3));
    g.g = pow_mod(r, (g.p - 1) / g.q, g.p);
    if (g.g != 1) return {g};
  }
  throw GenerationError("ddh_pg: no generator found");
}

DdhParams ddh_pg(std::string_view profile, Rng& rng) { return ddh_pg(parse_profile(profile), rng); }

DdhSample ddh_make_projective(const DdhParams& params, const BigUint& a, const BigUint& b) {
  const auto& G = params.group;
  BigUint ra = a % G.q, rb = b % G.q;
  DdhInstance x{pow_mod(G.g, ra, G.p), pow_mod(G.g, rb, G.p),
                pow_mod(G.g, BigUint(ra * rb % G.q), G.p)};
  return {x, {ra, rb}, InstanceKind::projective};
}

DdhSample ddh_make_smooth(const DdhParams& params, const BigUint& a, const BigUint& b,
                          const BigUint& c) {
  const auto& G = params.group;
  BigUint ra = a % G.q, rb = b % G.q, rc = c % G.q;
  if (rc == ra * rb % G.q) throw ParameterError("ddh smooth instance: c = ab mod q");
  DdhInstance x{pow_mod(G.g, ra, G.p), pow_mod(G.g, rb, G.p), pow_mod(G.g, rc, G.p)};
  return {x, {ra, rb}, InstanceKind::smooth};
}

DdhSample ddh_is(const DdhParams& params, int delta, Rng& rng) {
  if (delta != 0 && delta != 1) throw ParameterError("ddh_is: delta must be 0 or 1");
  const auto& q = params.group.q;
  BigUint a = rng.below(q);
  BigUint b = rng.below(q);
  if (delta == 0) return ddh_make_projective(params, a, b);
  const BigUint ab = a * b % q;
  BigUint c;
  do {
    c = rng.below(q);
  } while (c == ab);
  return ddh_make_smooth(params, a, b, c);
}

InstanceKind ddh_di(const DdhParams& params, const DdhInstance& x, const DdhWitness& w) {
  const auto& G = params.group;
  if (w.a < 0 || w.b < 0 || w.a >= G.q || w.b >= G.q)
    throw InvalidWitness("ddh_di: witness exponent out of range");
  if (pow_mod(G.g, w.a, G.p) != x.alpha || pow_mod(G.g, w.b, G.p) != x.beta)
    throw InvalidWitness("ddh_di: witness does not match (alpha, beta)");
  if (pow_mod(G.g, BigUint(w.a * w.b % G.q), G.p) == x.gamma) return InstanceKind::projective;
  return InstanceKind::smooth;
}

DdhKeyPair ddh_kg_with(const DdhParams& params, const DdhInstance& x, const BigUint& u,
                       const BigUint& v) {
  const auto& G = params.group;
  BigUint pk = pow_mod(x.alpha, u, G.p) * pow_mod(G.g, v, G.p) % G.p;
  BigUint hk = pow_mod(x.gamma, u, G.p) * pow_mod(x.beta, v, G.p) % G.p;
  return {hk, pk};
}

DdhKeyPair ddh_kg(const DdhParams& params, const DdhInstance& x, Rng& rng) {
  BigUint u = rng.below(params.group.q);
  BigUint v = rng.below(params.group.q);
  return ddh_kg_with(params, x, u, v);
}

BigUint ddh_hash(const DdhParams&, const DdhInstance&, const BigUint& hk) { return hk; }

BigUint ddh_phash(const DdhParams& params, const DdhInstance&, const BigUint& pk,
                  const DdhWitness& w) {
  return pow_mod(pk, w.b, params.group.p);
}

// ---------------------------------------------------------------------------

DdhInstance DdhFamily::instance_of(const Instance& x) {
  if (x.parts.size() != 3) throw ParameterError("ddh instance: expected 3 parts");
  return {x.parts[0], x.parts[1], x.parts[2]};
}

DdhWitness DdhFamily::witness_of(const Witness& w) {
  if (w.parts.size() != 2) throw InvalidWitness("ddh witness: expected 2 parts");
  return {w.parts[0], w.parts[1]};
}

InstancePair DdhFamily::sample(InstanceKind kind, Rng& rng) const {
  DdhSample s = ddh_is(params_, kind == InstanceKind::projective ? 0 : 1, rng);
  return {to_generic(s.x), to_generic(s.w), s.kind};
}

InstanceKind DdhFamily::distinguish(const Instance& x, const Witness& w) const {
  if (!accepts(x)) throw InvalidWitness("ddh_di: instance outside the group");
  return ddh_di(params_, instance_of(x), witness_of(w));
}

KeyPair DdhFamily::keygen(const Instance& x, Rng& rng) const {
  DdhKeyPair kp = ddh_kg(params_, instance_of(x), rng);
  KeyPair out;
  out.hk.parts = {kp.hk};
  out.pk.parts = {kp.pk};
  return out;
}

HashValue DdhFamily::hash(const Instance& x, const HashKey& hk) const {
  if (hk.parts.size() != 1) throw ParameterError("ddh hash: malformed hash key");
  return canonical_encode(ddh_hash(params_, instance_of(x), hk.parts[0]), hash_bytes());
}

HashValue DdhFamily::project(const Instance& x, const ProjectionKey& pk, const Witness& w) const {
  if (!accepts(pk)) throw ParameterError("ddh projection: malformed projection key");
  return canonical_encode(ddh_phash(params_, instance_of(x), pk.parts[0], witness_of(w)),
                          hash_bytes());
}

bool DdhFamily::accepts(const Instance& x) const {
  if (x.parts.size() != 3) return false;
  for (const auto& e : x.parts)
    if (!params_.group.contains(e)) return false;
  return true;
}

bool DdhFamily::accepts(const Witness& w) const {
  if (w.parts.size() != 2) return false;
  for (const auto& e : w.parts)
    if (e < 0 || e >= params_.group.q) return false;
  return true;
}

bool DdhFamily::accepts(const ProjectionKey& pk) const {
  return pk.parts.size() == 1 && !pk.extractor && params_.group.contains(pk.parts[0]);
}

}  // namespace otframe
