#include "otframe/groupmath.hpp"

#include <algorithm>
#include <cstring>
#include <mutex>

#include <sodium.h>

namespace otframe {
namespace {

void ensure_sodium() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (sodium_init() < 0) throw std::runtime_error("libsodium initialisation failed");
  });
}

Rng::Seed hash_to_seed(std::string_view domain, std::span<const std::uint8_t> a,
                       std::span<const std::uint8_t> b) {
  ensure_sodium();
  crypto_hash_sha256_state st;
  crypto_hash_sha256_init(&st);
  crypto_hash_sha256_update(&st, reinterpret_cast<const unsigned char*>(domain.data()),
                            domain.size());
  crypto_hash_sha256_update(&st, a.data(), a.size());
  crypto_hash_sha256_update(&st, b.data(), b.size());
  Rng::Seed out{};
  crypto_hash_sha256_final(&st, out.data());
  return out;
}

std::array<std::uint8_t, 8> le64(std::uint64_t v) {
  std::array<std::uint8_t, 8> out{};
  for (int i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(v >> (8 * i));
  return out;
}

constexpr unsigned kSmallPrimes[] = {
    3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,  47,  53,  59,  61,
    67,  71,  73,  79,  83,  89,  97,  101, 103, 107, 109, 113, 127, 131, 137, 139, 149,
    151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233, 239,
    241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311, 313, 317, 331, 337, 347,
    349, 353, 359, 367, 373, 379, 383, 389, 397, 401, 409, 419, 421, 431, 433, 439, 443,
    449, 457, 461, 463, 467, 479, 487, 491, 499, 503, 509, 521, 523, 541, 547, 557, 563,
    569, 571, 577, 587, 593, 599, 601, 607, 613, 617, 619, 631, 641, 643, 647, 653, 659,
    661, 673, 677, 683, 691, 701, 709, 719, 727, 733, 739, 743, 751, 757, 761, 769, 773,
    787, 797, 809, 811, 821, 823, 827, 829, 839, 853, 857, 859, 863, 877, 881, 883, 887,
    907, 911, 919, 929, 937, 941, 947, 953, 967, 971, 977, 983, 991, 997};

void require_non_negative(const BigUint& x, const char* what) {
  if (sgn(x) < 0) throw ParameterError(std::string(what) + " must be non-negative");
}

// Random prime with exactly `bits` bits; `top2` also sets the second-highest
// bit and `low` forces the residue mod 4 (0 = only odd).
BigUint random_prime(std::size_t bits, bool top2, unsigned mod4, Rng& rng) {
  const std::size_t budget = 200 * bits + 1000;
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    BigUint c = rng.exact_bits(bits);
    if (top2 && bits >= 2) mpz_setbit(c.get_mpz_t(), bits - 2);
    mpz_setbit(c.get_mpz_t(), 0);
    if (mod4 == 3) mpz_setbit(c.get_mpz_t(), 1);
    if (bit_length(c) != bits) continue;
    if (is_probable_prime(c, rng)) return c;
  }
  throw GenerationError("prime search exceeded retry budget");
}

}  // namespace

// ---------------------------------------------------------------------------
// Rng

Rng::Rng() {
  ensure_sodium();
  randombytes_buf(key_.data(), key_.size());
}

Rng::Rng(std::uint64_t seed) {
  const auto s = le64(seed);
  key_ = hash_to_seed("otframe/rng/seed", s, {});
}

Rng::Rng(const Seed& key) : key_(key) { ensure_sodium(); }

Rng Rng::derive(std::string_view label) const {
  return Rng(hash_to_seed(
      "otframe/rng/derive", key_,
      std::span(reinterpret_cast<const std::uint8_t*>(label.data()), label.size())));
}

Rng Rng::derive(std::uint64_t index) const {
  const auto s = le64(index);
  return Rng(hash_to_seed("otframe/rng/derive-index", key_, s));
}

void Rng::refill() {
  static const std::array<std::uint8_t, 512> zeros{};
  static const std::array<std::uint8_t, crypto_stream_chacha20_NONCEBYTES> nonce{};
  crypto_stream_chacha20_xor_ic(buf_.data(), zeros.data(), buf_.size(), nonce.data(), block_,
                                key_.data());
  block_ += buf_.size() / 64;
  pos_ = 0;
}

void Rng::fill(std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    if (pos_ == buf_.size()) refill();
    const std::size_t take = std::min(out.size() - done, buf_.size() - pos_);
    std::memcpy(out.data() + done, buf_.data() + pos_, take);
    pos_ += take;
    done += take;
  }
}

Rng::Seed Rng::next_seed() {
  Seed s{};
  fill(s);
  return s;
}

std::uint64_t Rng::next_u64() {
  std::array<std::uint8_t, 8> b{};
  fill(b);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

bool Rng::next_bit() {
  std::uint8_t b = 0;
  fill(std::span(&b, 1));
  return (b & 1u) != 0;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw ParameterError("Rng::below: empty range");
  const std::uint64_t limit = bound * (UINT64_MAX / bound);
  for (;;) {
    const std::uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

BigUint Rng::below(const BigUint& bound) {
  if (sgn(bound) <= 0) throw ParameterError("Rng::below: empty range");
  const std::size_t bits = bit_length(bound);
  const std::size_t nbytes = (bits + 7) / 8;
  Bytes buf(nbytes);
  const unsigned top_bits = static_cast<unsigned>(bits % 8);
  for (;;) {
    fill(buf);
    if (top_bits != 0) buf[0] &= static_cast<std::uint8_t>((1u << top_bits) - 1);
    BigUint v = canonical_decode(buf);
    if (v < bound) return v;
  }
}

BigUint Rng::exact_bits(std::size_t bits) {
  if (bits == 0) throw ParameterError("exact_bits: zero width");
  BigUint v = below(BigUint(1) << bits);
  mpz_setbit(v.get_mpz_t(), bits - 1);
  return v;
}

BigUint Rng::unit_mod(const BigUint& m) {
  if (m < 2) throw ParameterError("unit_mod: modulus < 2");
  for (;;) {
    BigUint v = below(m);
    if (sgn(v) != 0 && gcd(v, m) == 1) return v;
  }
}

// ---------------------------------------------------------------------------
// Arithmetic

BigUint pow_mod(const BigUint& base, const BigUint& exp, const BigUint& modulus) {
  if (modulus < 2) throw ParameterError("pow_mod: modulus < 2");
  require_non_negative(base, "pow_mod base");
  require_non_negative(exp, "pow_mod exponent");
  BigUint r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

BigUint inv_mod(const BigUint& a, const BigUint& modulus) {
  BigUint r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), modulus.get_mpz_t()) == 0)
    throw ParameterError("inv_mod: not invertible");
  return r;
}

BigUint gcd(const BigUint& a, const BigUint& b) {
  BigUint r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::size_t bit_length(const BigUint& x) {
  return sgn(x) == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2);
}

std::size_t byte_length(const BigUint& x) { return (bit_length(x) + 7) / 8; }

int jacobi(const BigUint& a, const BigUint& n) {
  if (n < 3 || mpz_even_p(n.get_mpz_t()))
    throw ParameterError("jacobi: modulus must be odd and >= 3");
  require_non_negative(a, "jacobi argument");
  BigUint r = a % n;
  return mpz_jacobi(r.get_mpz_t(), n.get_mpz_t());
}

bool is_probable_prime(const BigUint& n, Rng& rng, int rounds) {
  if (n < 2) return false;
  if (n == 2) return true;
  if (mpz_even_p(n.get_mpz_t())) return false;
  for (unsigned sp : kSmallPrimes) {
    if (n == sp) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), sp)) return false;
  }
  if (n < 1009UL * 1009UL) return true;  // survived trial division up to sqrt(n)

  const BigUint n_minus_1 = n - 1;
  BigUint d = n_minus_1;
  std::size_t s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  const BigUint span = n - 3;
  for (int round = 0; round < rounds; ++round) {
    const BigUint a = rng.below(span) + 2;  // [2, n-2]
    BigUint x = pow_mod(a, d, n);
    if (x == 1 || x == n_minus_1) continue;
    bool composite = true;
    for (std::size_t i = 1; i < s; ++i) {
      x = x * x % n;
      if (x == n_minus_1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Schnorr groups

bool SchnorrGroup::contains(const BigUint& e) const {
  return sgn(e) > 0 && e < p && pow_mod(e, q, p) == 1;
}

bool is_valid_group(const SchnorrGroup& grp, Rng& rng) {
  if (grp.q < 3 || grp.p <= grp.q) return false;
  if (!is_probable_prime(grp.q, rng) || !is_probable_prime(grp.p, rng)) return false;
  if ((grp.p - 1) % grp.q != 0) return false;
  return grp.g != 1 && grp.contains(grp.g);
}

SchnorrGroup gen_schnorr_group(std::size_t bits_p, std::size_t bits_q, Rng& rng) {
  if (bits_q < 3 || bits_q >= bits_p)
    throw ParameterError("gen_schnorr_group: need 3 <= bits_q < bits_p");
  const BigUint lo = BigUint(1) << (bits_p - 1);
  const BigUint hi = (BigUint(1) << bits_p) - 1;
  const std::size_t per_q_budget = 16 * bits_p + 64;

  for (int q_attempt = 0; q_attempt < 200; ++q_attempt) {
    const BigUint q = random_prime(bits_q, false, 0, rng);
    // p = k*q + 1 with p in [lo, hi]; k even so that p is odd.
    BigUint kmin = (lo - 1 + q - 1) / q;
    BigUint kmax = (hi - 1) / q;
    if (mpz_odd_p(kmin.get_mpz_t())) kmin += 1;
    if (mpz_odd_p(kmax.get_mpz_t())) kmax -= 1;
    if (kmin > kmax) continue;
    const BigUint choices = (kmax - kmin) / 2 + 1;

    std::vector<BigUint> candidates;
    if (choices <= per_q_budget) {
      for (BigUint k = kmin; k <= kmax; k += 2) candidates.push_back(k);
      for (std::size_t i = candidates.size(); i > 1; --i)
        std::swap(candidates[i - 1], candidates[rng.below(static_cast<std::uint64_t>(i))]);
    }
    const std::size_t tries =
        candidates.empty() ? per_q_budget : candidates.size();
    for (std::size_t t = 0; t < tries; ++t) {
      const BigUint k = candidates.empty() ? kmin + 2 * rng.below(choices) : candidates[t];
      const BigUint p = k * q + 1;
      if (!is_probable_prime(p, rng)) continue;
      const BigUint cofactor = (p - 1) / q;
      for (int g_attempt = 0; g_attempt < 1000; ++g_attempt) {
        const BigUint r = rng.below(p - 3) + 2;
        BigUint g = pow_mod(r, cofactor, p);
        if (g != 1) return SchnorrGroup{p, q, g};
      }
    }
  }
  throw GenerationError("gen_schnorr_group: retry budget exhausted");
}

// ---------------------------------------------------------------------------
// RSA-like moduli

bool satisfies_form(const BigUint& p, const BigUint& q, ModulusForm form) {
  if (p < 3 || q < 3 || p == q) return false;
  if (mpz_even_p(p.get_mpz_t()) || mpz_even_p(q.get_mpz_t())) return false;
  switch (form) {
    case ModulusForm::dnr:
      return gcd(p * q, (p - 1) * (q - 1)) == 1;
    case ModulusForm::dqr:
      return p % 4 == 3 && q % 4 == 3 && p < q && q < 2 * p - 1;
  }
  return false;
}

RsaLikeModulus make_modulus(const BigUint& p, const BigUint& q, ModulusForm form) {
  if (!satisfies_form(p, q, form)) throw ParameterError("modulus factors violate the form");
  return RsaLikeModulus{p, q, p * q, form};
}

bool is_valid_modulus(const RsaLikeModulus& m, Rng& rng) {
  return satisfies_form(m.p, m.q, m.form) && m.n == m.p * m.q &&
         is_probable_prime(m.p, rng) && is_probable_prime(m.q, rng);
}

RsaLikeModulus gen_modulus(std::size_t bits_prime, ModulusForm form, Rng& rng) {
  if (bits_prime < 3) throw ParameterError("gen_modulus: bits_prime < 3");
  const bool top2 = bits_prime >= 8;
  const unsigned mod4 = form == ModulusForm::dqr ? 3 : 0;
  for (int attempt = 0; attempt < 64; ++attempt) {
    BigUint a = random_prime(bits_prime, top2, mod4, rng);
    BigUint b = random_prime(bits_prime, top2, mod4, rng);
    if (a > b) std::swap(a, b);
    if (satisfies_form(a, b, form)) return RsaLikeModulus{a, b, a * b, form};
  }
  throw GenerationError("gen_modulus: retry budget exhausted");
}

// ---------------------------------------------------------------------------
// Encodings

Bytes canonical_encode(const BigUint& x, std::size_t byte_len) {
  require_non_negative(x, "canonical_encode");
  const std::size_t need = byte_length(x);
  if (need > byte_len) throw OverflowError("canonical_encode: value exceeds width");
  Bytes out(byte_len, 0);
  if (need > 0) {
    std::size_t written = 0;
    mpz_export(out.data() + (byte_len - need), &written, 1, 1, 1, 0, x.get_mpz_t());
  }
  return out;
}

BigUint canonical_decode(std::span<const std::uint8_t> bytes) {
  BigUint x;
  if (!bytes.empty()) mpz_import(x.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  return x;
}

Bytes minimal_encode(const BigUint& x) { return canonical_encode(x, byte_length(x)); }

Bytes sha256(std::span<const std::uint8_t> data) {
  ensure_sodium();
  Bytes out(crypto_hash_sha256_BYTES);
  crypto_hash_sha256(out.data(), data.data(), data.size());
  return out;
}

}  // namespace otframe
