#include "otframe/residuosity.hpp"

namespace otframe {

ExpKeyPair exp_kg_with(const ExpShape& shape, const BigUint& hk) {
  return {hk, pow_mod(shape.g, hk, shape.modulus)};
}

ExpKeyPair exp_kg(const ExpShape& shape, Rng& rng) {
  return exp_kg_with(shape, rng.below(shape.key_space));
}

BigUint exp_hash(const ExpShape& shape, const BigUint& x, const BigUint& hk) {
  return pow_mod(x, hk, shape.modulus);
}

BigUint exp_phash(const ExpShape& shape, const BigUint& pk, const BigUint& r) {
  return pow_mod(pk, r, shape.modulus);
}

namespace {

bool unit_below(const BigUint& e, const BigUint& bound, const BigUint& n) {
  return e > 0 && e < bound && gcd(e, n) == 1;
}

bool large_enough(Profile profile, const BigUint& n) {
  return profile == Profile::toy || bit_length(n) >= 2 * kProductionPrimeBits;
}

RsaLikeModulus pick_modulus(Profile profile, ModulusForm form, Rng& rng) {
  if (profile == Profile::production) return gen_modulus(kProductionPrimeBits, form, rng);
  return form == ModulusForm::dnr ? make_modulus(3, 5, form) : make_modulus(7, 11, form);
}

}  // namespace

// ---------------------------------------------------------------------------
// N-th residuosity

BigUint dnr_generator(const RsaLikeModulus& modulus, const BigUint& a) {
  const BigUint& n = modulus.n;
  const BigUint n2 = n * n;
  // The exponent N^{1 + 2 bitlen(N)} is reduced modulo |Z*_{N^2}| = N (p-1)(q-1);
  // the factorization is known here, and the result equals the unreduced power.
  const BigUint order = n * (modulus.p - 1) * (modulus.q - 1);
  const BigUint e = pow_mod(n, BigUint(1 + 2 * bit_length(n)), order);
  return pow_mod(a, e, n2);
}

DnrParams dnr_params(Profile profile, const RsaLikeModulus& modulus, Rng& rng) {
  if (modulus.form != ModulusForm::dnr) throw ParameterError("dnr_params: wrong modulus form");
  const BigUint n2 = modulus.n * modulus.n;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    BigUint g = dnr_generator(modulus, rng.unit_mod(n2));
    if (g != 1) return {profile, modulus.n, g};
  }
  throw GenerationError("dnr_pg: generator search exhausted");
}

DnrParams dnr_pg(Profile profile, Rng& rng) {
  return dnr_params(profile, pick_modulus(profile, ModulusForm::dnr, rng), rng);
}

DnrParams dnr_pg(std::string_view profile, Rng& rng) { return dnr_pg(parse_profile(profile), rng); }

ResSample dnr_make_instance(const DnrParams& params, const BigUint& r, const BigUint& v) {
  const BigUint n2 = params.n_squared();
  if (!unit_below(r, params.n, params.n)) throw ParameterError("dnr instance: r not in Z*_N");
  if (v != 0 && !unit_below(v, params.n, params.n))
    throw ParameterError("dnr instance: v must be 0 or in Z*_N");
  BigUint x = pow_mod(params.g, r, n2);
  if (v == 0) return {x, {r, 0}, InstanceKind::projective};
  x = x * (1 + v * params.n) % n2;
  return {x, {r, v}, InstanceKind::smooth};
}

ResSample dnr_is(const DnrParams& params, int delta, Rng& rng) {
  if (delta != 0 && delta != 1) throw ParameterError("dnr_is: delta must be 0 or 1");
  BigUint r = rng.unit_mod(params.n);
  BigUint v = rng.unit_mod(params.n);
  return dnr_make_instance(params, r, delta == 0 ? BigUint(0) : v);
}

InstanceKind dnr_di(const DnrParams& params, const BigUint& x, const ResWitness& w) {
  const BigUint n2 = params.n_squared();
  if (!large_enough(params.profile, params.n)) throw InvalidWitness("dnr_di: modulus too small");
  if (!unit_below(params.g, n2, params.n) || !unit_below(x, n2, params.n))
    throw InvalidWitness("dnr_di: g or x outside Z*_{N^2}");
  if (!unit_below(w.r, params.n, params.n)) throw InvalidWitness("dnr_di: r outside Z*_N");
  if (w.v < 0 || w.v >= params.n) throw InvalidWitness("dnr_di: v out of range");
  const BigUint gr = pow_mod(params.g, w.r, n2);
  if (w.v == 0) {
    if (x == gr) return InstanceKind::projective;
    throw InvalidWitness("dnr_di: x != g^r");
  }
  if (gcd(w.v, params.n) != 1) throw InvalidWitness("dnr_di: v not a unit");
  if (x == gr * (1 + w.v * params.n) % n2) return InstanceKind::smooth;
  throw InvalidWitness("dnr_di: x != g^r (1 + vN)");
}

// ---------------------------------------------------------------------------
// Quadratic residuosity

BigUint dqr_generator(const BigUint& n, const BigUint& a) {
  const BigUint t = BigUint(1) << bit_length(n);
  return pow_mod(a, BigUint(2 * t), n);
}

DqrParams dqr_params(Profile profile, const RsaLikeModulus& modulus, Rng& rng) {
  if (modulus.form != ModulusForm::dqr) throw ParameterError("dqr_params: wrong modulus form");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    BigUint g = dqr_generator(modulus.n, rng.unit_mod(modulus.n));
    if (g != 1) return {profile, modulus.n, g};
  }
  throw GenerationError("dqr_pg: generator search exhausted");
}

DqrParams dqr_pg(Profile profile, Rng& rng) {
  return dqr_params(profile, pick_modulus(profile, ModulusForm::dqr, rng), rng);
}

DqrParams dqr_pg(std::string_view profile, Rng& rng) { return dqr_pg(parse_profile(profile), rng); }

ResSample dqr_make_instance(const DqrParams& params, const BigUint& r, int delta) {
  if (delta != 0 && delta != 1) throw ParameterError("dqr instance: delta must be 0 or 1");
  if (r < 0 || r >= params.n) throw ParameterError("dqr instance: r outside Z_N");
  BigUint x = pow_mod(params.g, r, params.n);
  if (delta == 0) return {x, {r, 0}, InstanceKind::projective};
  return {BigUint(params.n - x), {r, 0}, InstanceKind::smooth};
}

ResSample dqr_is(const DqrParams& params, int delta, Rng& rng) {
  if (delta != 0 && delta != 1) throw ParameterError("dqr_is: delta must be 0 or 1");
  return dqr_make_instance(params, rng.below(params.n), delta);
}

InstanceKind dqr_di(const DqrParams& params, const BigUint& x, const BigUint& r) {
  if (!large_enough(params.profile, params.n)) throw InvalidWitness("dqr_di: modulus too small");
  if (!unit_below(params.g, params.n, params.n) || !unit_below(x, params.n, params.n))
    throw InvalidWitness("dqr_di: g or x outside Z*_N");
  if (r < 0 || r >= params.n) throw InvalidWitness("dqr_di: r outside Z_N");
  const BigUint gr = pow_mod(params.g, r, params.n);
  if (x == gr) return InstanceKind::projective;
  if (x == params.n - gr) return InstanceKind::smooth;
  throw InvalidWitness("dqr_di: neither x = g^r nor x = N - g^r");
}

// ---------------------------------------------------------------------------
// Adapters

bool ExpFamily::is_unit(const BigUint& e) const {
  return e > 0 && e < shape_.modulus && gcd(e, shape_.modulus) == 1;
}

KeyPair ExpFamily::keygen(const Instance&, Rng& rng) const {
  ExpKeyPair kp = exp_kg(shape_, rng);
  KeyPair out;
  out.hk.parts = {kp.hk};
  out.pk.parts = {kp.pk};
  return out;
}

HashValue ExpFamily::hash(const Instance& x, const HashKey& hk) const {
  if (x.parts.size() != 1 || hk.parts.size() != 1)
    throw ParameterError("exp hash: malformed input");
  return canonical_encode(exp_hash(shape_, x.parts[0], hk.parts[0]), hash_bytes());
}

HashValue ExpFamily::project(const Instance& x, const ProjectionKey& pk, const Witness& w) const {
  if (x.parts.size() != 1 || w.parts.empty() || !accepts(pk))
    throw ParameterError("exp projection: malformed input");
  return canonical_encode(exp_phash(shape_, pk.parts[0], w.parts[0]), hash_bytes());
}

bool ExpFamily::accepts(const Instance& x) const {
  return x.parts.size() == 1 && is_unit(x.parts[0]);
}

bool ExpFamily::accepts(const ProjectionKey& pk) const {
  return pk.parts.size() == 1 && !pk.extractor && is_unit(pk.parts[0]);
}

InstancePair DnrFamily::sample(InstanceKind kind, Rng& rng) const {
  ResSample s = dnr_is(params_, kind == InstanceKind::projective ? 0 : 1, rng);
  return {{{s.x}}, {{s.w.r, s.w.v}}, s.kind};
}

InstanceKind DnrFamily::distinguish(const Instance& x, const Witness& w) const {
  if (x.parts.size() != 1 || w.parts.size() != 2) throw InvalidWitness("dnr_di: malformed input");
  return dnr_di(params_, x.parts[0], {w.parts[0], w.parts[1]});
}

bool DnrFamily::accepts(const Witness& w) const {
  return w.parts.size() == 2 && w.parts[0] >= 0 && w.parts[0] < params_.n && w.parts[1] >= 0 &&
         w.parts[1] < params_.n;
}

InstancePair DqrFamily::sample(InstanceKind kind, Rng& rng) const {
  ResSample s = dqr_is(params_, kind == InstanceKind::projective ? 0 : 1, rng);
  return {{{s.x}}, {{s.w.r}}, s.kind};
}

InstanceKind DqrFamily::distinguish(const Instance& x, const Witness& w) const {
  if (x.parts.size() != 1 || w.parts.size() != 1) throw InvalidWitness("dqr_di: malformed input");
  return dqr_di(params_, x.parts[0], w.parts[0]);
}

bool DqrFamily::accepts(const Instance& x) const {
  return ExpFamily::accepts(x) && jacobi(x.parts[0], params_.n) == 1;
}

bool DqrFamily::accepts(const Witness& w) const {
  return w.parts.size() == 1 && w.parts[0] >= 0 && w.parts[0] < params_.n;
}

}  // namespace otframe
