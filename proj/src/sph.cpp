#include "otframe/sph.hpp"

#include <cmath>
#include <string>

#include "otframe/kernels.hpp"

namespace otframe {

Assumption parse_assumption(std::string_view name) {
  if (name == "ddh") return Assumption::ddh;
  if (name == "dnr") return Assumption::dnr;
  if (name == "dqr") return Assumption::dqr;
  throw ParameterError("unknown assumption: " + std::string(name));
}

Profile parse_profile(std::string_view name) {
  if (name == "toy") return Profile::toy;
  if (name == "production") return Profile::production;
  throw ParameterError("unknown profile: " + std::string(name));
}

std::string_view to_string(Assumption a) {
  switch (a) {
    case Assumption::ddh: return "ddh";
    case Assumption::dnr: return "dnr";
    case Assumption::dqr: return "dqr";
  }
  return "?";
}

std::string_view to_string(Profile p) { return p == Profile::toy ? "toy" : "production"; }

// ---------------------------------------------------------------------------
// BitVector / BitMatrix

BitVector::BitVector(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

BitVector BitVector::from_bytes(std::span<const std::uint8_t> bytes, std::size_t bits) {
  if (bits > bytes.size() * 8) throw ParameterError("BitVector::from_bytes: too few bytes");
  BitVector v(bits);
  for (std::size_t i = 0; i < bits; ++i) {
    if ((bytes[i / 8] >> (7 - i % 8)) & 1u) v.words_[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  return v;
}

Bytes BitVector::to_bytes() const {
  Bytes out((bits_ + 7) / 8, 0);
  for (std::size_t i = 0; i < bits_; ++i) {
    if (get(i)) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  }
  return out;
}

void BitVector::set(std::size_t i, bool v) {
  const std::uint64_t mask = std::uint64_t{1} << (i % 64);
  if (v)
    words_[i / 64] |= mask;
  else
    words_[i / 64] &= ~mask;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.bits_ != bits_) throw ParameterError("BitVector xor: length mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_((cols + 63) / 64), data_(rows * stride_, 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

bool BitMatrix::get(std::size_t r, std::size_t c) const {
  return (row(r)[c / 64] >> (c % 64)) & 1u;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool v) {
  const std::uint64_t mask = std::uint64_t{1} << (c % 64);
  if (v)
    row(r)[c / 64] |= mask;
  else
    row(r)[c / 64] &= ~mask;
}

// ---------------------------------------------------------------------------
// Extractor

namespace {

void next_row(Rng& stream, std::size_t cols, std::span<std::uint64_t> out) {
  std::vector<std::uint8_t> raw(out.size() * 8);
  stream.fill(raw);
  for (std::size_t w = 0; w < out.size(); ++w) {
    std::uint64_t v = 0;
    for (int b = 7; b >= 0; --b) v = (v << 8) | raw[w * 8 + b];
    out[w] = v;
  }
  if (cols % 64 != 0) out.back() &= (std::uint64_t{1} << (cols % 64)) - 1;
}

}  // namespace

ExtractorSeed ExtractorSeed::sample(std::size_t in_bits, std::size_t out_bits, Rng& rng) {
  ExtractorSeed s;
  s.in_bits = in_bits;
  s.out_bits = out_bits;
  s.matrix_seed = rng.next_seed();
  s.offset = BitVector(out_bits);
  for (std::size_t i = 0; i < out_bits; ++i) s.offset.set(i, rng.next_bit());
  return s;
}

BitMatrix ExtractorSeed::matrix() const {
  BitMatrix m(out_bits, in_bits);
  Rng stream(matrix_seed);
  for (std::size_t r = 0; r < out_bits; ++r)
    next_row(stream, in_bits, std::span(m.row(r), m.words_per_row()));
  return m;
}

BitVector lhl_extract(const BitMatrix& a, const BitVector& b, const BitVector& input) {
  if (a.cols() != input.size() || a.rows() != b.size())
    throw ParameterError("lhl_extract: dimension mismatch");
  BitVector out = b;
  const auto x = input.words();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    if (kernels::parity_and(a.row(r), x.data(), a.words_per_row())) out.set(r, !out.get(r));
  }
  return out;
}

BitVector lhl_extract(const ExtractorSeed& seed, const BitVector& input) {
  if (seed.in_bits != input.size() || seed.offset.size() != seed.out_bits)
    throw ParameterError("lhl_extract: dimension mismatch");
  BitVector out = seed.offset;
  Rng stream(seed.matrix_seed);
  std::vector<std::uint64_t> row((seed.in_bits + 63) / 64);
  const auto x = input.words();
  for (std::size_t r = 0; r < seed.out_bits; ++r) {
    next_row(stream, seed.in_bits, row);
    if (kernels::parity_and(row.data(), x.data(), row.size())) out.set(r, !out.get(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Family helpers

InstancePair HashFamily::sample(int delta, Rng& rng) const {
  if (delta != 0 && delta != 1) throw ParameterError("instance sampler: delta must be 0 or 1");
  return sample(delta == 0 ? InstanceKind::projective : InstanceKind::smooth, rng);
}

CompositeFamily::CompositeFamily(FamilyPtr base, std::size_t n, std::size_t h)
    : base_(std::move(base)), n_(n), h_(h) {
  if (!base_) throw ParameterError("composite family: null base");
  if (h_ < 1 || h_ >= n_) throw ParameterError("composite family: need 1 <= h < n");
}

InstanceVector CompositeFamily::sample(Rng& rng) const {
  InstanceVector out;
  out.reserve(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    Rng entry(rng.next_seed());
    out.push_back(base_->sample(j < h_ ? InstanceKind::projective : InstanceKind::smooth, entry));
  }
  return out;
}

InstanceVector CompositeFamily::cheat(Rng& rng) const {
  InstanceVector out;
  out.reserve(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    Rng entry(rng.next_seed());
    out.push_back(base_->sample(InstanceKind::projective, entry));
  }
  return out;
}

std::vector<InstanceKind> CompositeFamily::distinguish(const std::vector<Instance>& xs,
                                                       const std::vector<Witness>& ws) const {
  if (xs.size() != ws.size()) throw ParameterError("composite DI: length mismatch");
  std::vector<InstanceKind> out;
  out.reserve(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) out.push_back(base_->distinguish(xs[j], ws[j]));
  return out;
}

CompositeFamily sphdhc_from_sphdh(FamilyPtr base, std::size_t n, std::size_t h) {
  return CompositeFamily(std::move(base), n, h);
}

// ---------------------------------------------------------------------------
// Amplifier

std::size_t amplifier_repetitions(Ratio epsilon, std::size_t out_bits, std::size_t sigma) {
  if (epsilon.den == 0 || epsilon.num == 0 || epsilon.num >= epsilon.den)
    throw ParameterError("amplifier: need 0 < epsilon < 1");
  if (out_bits == 0) throw ParameterError("amplifier: output length must be >= 1");
  const double entropy_per_rep =
      std::log2(static_cast<double>(epsilon.den) / static_cast<double>(epsilon.num));
  const double need = static_cast<double>(out_bits + 2 * sigma) / entropy_per_rep;
  return static_cast<std::size_t>(std::ceil(need - 1e-9));
}

AmplifiedFamily::AmplifiedFamily(FamilyPtr base, Ratio epsilon, std::size_t out_bits,
                                 std::size_t sigma)
    : base_(std::move(base)),
      epsilon_(epsilon),
      out_bits_(out_bits),
      sigma_(sigma),
      reps_(amplifier_repetitions(epsilon, out_bits, sigma)) {
  if (!base_) throw ParameterError("amplifier: null base");
}

KeyPair AmplifiedFamily::keygen(const Instance& x, Rng& rng) const {
  KeyPair out;
  const std::size_t arity = base_->key_arity();
  out.hk.parts.reserve(reps_ * arity);
  out.pk.parts.reserve(reps_ * arity);
  for (std::size_t i = 0; i < reps_; ++i) {
    KeyPair kp = base_->keygen(x, rng);
    for (auto& v : kp.hk.parts) out.hk.parts.push_back(std::move(v));
    for (auto& v : kp.pk.parts) out.pk.parts.push_back(std::move(v));
  }
  ExtractorSeed seed = ExtractorSeed::sample(in_bits(), out_bits_, rng);
  out.hk.extractor = seed;
  out.pk.extractor = std::move(seed);
  return out;
}

BitVector AmplifiedFamily::gather(const std::vector<HashValue>& base_values) const {
  Bytes concat;
  concat.reserve(reps_ * base_->hash_bytes());
  for (const auto& v : base_values) concat.insert(concat.end(), v.begin(), v.end());
  return BitVector::from_bytes(concat, in_bits());
}

HashValue AmplifiedFamily::hash(const Instance& x, const HashKey& hk) const {
  const std::size_t arity = base_->key_arity();
  if (hk.parts.size() != reps_ * arity || !hk.extractor)
    throw ParameterError("amplified hash: malformed hash key");
  std::vector<HashValue> values;
  values.reserve(reps_);
  for (std::size_t i = 0; i < reps_; ++i) {
    HashKey part;
    part.parts.assign(hk.parts.begin() + i * arity, hk.parts.begin() + (i + 1) * arity);
    values.push_back(base_->hash(x, part));
  }
  return lhl_extract(*hk.extractor, gather(values)).to_bytes();
}

HashValue AmplifiedFamily::project(const Instance& x, const ProjectionKey& pk,
                                   const Witness& w) const {
  if (!accepts(pk)) throw ParameterError("amplified projection: malformed projection key");
  const std::size_t arity = base_->key_arity();
  std::vector<HashValue> values;
  values.reserve(reps_);
  for (std::size_t i = 0; i < reps_; ++i) {
    ProjectionKey part;
    part.parts.assign(pk.parts.begin() + i * arity, pk.parts.begin() + (i + 1) * arity);
    values.push_back(base_->project(x, part, w));
  }
  return lhl_extract(*pk.extractor, gather(values)).to_bytes();
}

bool AmplifiedFamily::accepts(const ProjectionKey& pk) const {
  const std::size_t arity = base_->key_arity();
  if (pk.parts.size() != reps_ * arity || !pk.extractor) return false;
  if (pk.extractor->in_bits != in_bits() || pk.extractor->out_bits != out_bits_ ||
      pk.extractor->offset.size() != out_bits_)
    return false;
  for (std::size_t i = 0; i < reps_; ++i) {
    ProjectionKey part;
    part.parts.assign(pk.parts.begin() + i * arity, pk.parts.begin() + (i + 1) * arity);
    if (!base_->accepts(part)) return false;
  }
  return true;
}

std::shared_ptr<const AmplifiedFamily> amplify_uphdh_to_sphdh(FamilyPtr base, Ratio epsilon,
                                                              std::size_t out_bits,
                                                              std::size_t sigma) {
  return std::make_shared<const AmplifiedFamily>(std::move(base), epsilon, out_bits, sigma);
}

}  // namespace otframe
