#include "otframe/wire.hpp"

namespace otframe {
namespace {

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::size_t v) {
    if (v > 0xFFFF) throw ParameterError("wire: field exceeds 16-bit length");
    out_.push_back(static_cast<std::uint8_t>(v >> 8));
    out_.push_back(static_cast<std::uint8_t>(v));
  }
  void bytes(std::span<const std::uint8_t> b) {
    u16(b.size());
    out_.insert(out_.end(), b.begin(), b.end());
  }
  void integer(const BigUint& v) {
    if (v < 0) throw ParameterError("wire: negative integer");
    bytes(minimal_encode(v));
  }
  void integer(std::uint64_t v) { integer(BigUint(static_cast<unsigned long>(v))); }
  void ints(const std::vector<BigUint>& vs) {
    u16(vs.size());
    for (const auto& v : vs) integer(v);
  }
  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t u8() {
    need(1);
    return in_[pos_++];
  }
  std::size_t u16() {
    need(2);
    std::size_t v = (std::size_t{in_[pos_]} << 8) | in_[pos_ + 1];
    pos_ += 2;
    return v;
  }
  Bytes bytes() {
    const std::size_t len = u16();
    need(len);
    Bytes b(in_.begin() + pos_, in_.begin() + pos_ + len);
    pos_ += len;
    return b;
  }
  BigUint integer() {
    Bytes b = bytes();
    if (!b.empty() && b[0] == 0) throw DecodeError("wire: non-canonical integer");
    return canonical_decode(b);
  }
  std::uint32_t small(std::uint64_t max) {
    BigUint v = integer();
    if (v > BigUint(static_cast<unsigned long>(max))) throw DecodeError("wire: value out of range");
    return static_cast<std::uint32_t>(v.get_ui());
  }
  std::vector<BigUint> ints() {
    std::vector<BigUint> out(u16());
    for (auto& v : out) v = integer();
    return out;
  }
  void finish() const {
    if (pos_ != in_.size()) throw DecodeError("wire: trailing bytes in body");
  }

 private:
  void need(std::size_t k) const {
    if (in_.size() - pos_ < k) throw DecodeError("wire: truncated body");
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

void put_commitments(Writer& w, const std::vector<Commitment>& cs) {
  w.u16(cs.size());
  for (const auto& c : cs) w.ints(c.parts);
}

std::vector<Commitment> get_commitments(Reader& r, CommitScheme scheme) {
  std::vector<Commitment> out(r.u16());
  for (auto& c : out) {
    c.scheme = scheme;
    c.parts = r.ints();
  }
  return out;
}

void put_decommitments(Writer& w, const std::vector<Decommitment>& ds) {
  w.u16(ds.size());
  for (const auto& d : ds) {
    w.integer(d.m);
    w.integer(d.r);
  }
}

std::vector<Decommitment> get_decommitments(Reader& r) {
  std::vector<Decommitment> out(r.u16());
  for (auto& d : out) {
    d.m = r.integer();
    d.r = r.integer();
  }
  return out;
}

void put_permutation(Writer& w, const Permutation& pi, std::uint8_t width) {
  if (width != 1 && width != 2) throw ParameterError("wire: permutation width must be 1 or 2");
  w.u8(width);
  w.u16(pi.size());
  for (auto v : pi) {
    if (width == 1) {
      if (v > 0xFF) throw ParameterError("wire: permutation image exceeds one byte");
      w.u8(static_cast<std::uint8_t>(v));
    } else {
      w.u16(v);
    }
  }
}

Permutation get_permutation(Reader& r, std::uint8_t& width) {
  const std::uint8_t wd = r.u8();
  if (wd != 1 && wd != 2) throw DecodeError("wire: bad permutation width");
  width = wd;
  Permutation pi(r.u16());
  for (auto& v : pi) v = static_cast<std::uint32_t>(wd == 1 ? r.u8() : r.u16());
  return pi;
}

void put_key(Writer& w, const ProjectionKey& pk) {
  w.ints(pk.parts);
  if (!pk.extractor) {
    w.u8(0);
    return;
  }
  const auto& s = *pk.extractor;
  w.u8(1);
  w.integer(static_cast<std::uint64_t>(s.in_bits));
  w.integer(static_cast<std::uint64_t>(s.out_bits));
  w.bytes(s.matrix_seed);
  if (s.offset.size() != s.out_bits) throw ParameterError("wire: extractor offset length");
  w.bytes(s.offset.to_bytes());
}

ProjectionKey get_key(Reader& r) {
  ProjectionKey pk;
  pk.parts = r.ints();
  const std::uint8_t flag = r.u8();
  if (flag == 0) return pk;
  if (flag != 1) throw DecodeError("wire: bad extractor flag");
  ExtractorSeed s;
  s.in_bits = r.small(0xFFFFFFFFu);
  s.out_bits = r.small(0xFFFFu);
  Bytes seed = r.bytes();
  if (seed.size() != s.matrix_seed.size()) throw DecodeError("wire: bad extractor seed length");
  std::copy(seed.begin(), seed.end(), s.matrix_seed.begin());
  Bytes off = r.bytes();
  if (off.size() != (s.out_bits + 7) / 8) throw DecodeError("wire: bad extractor offset length");
  s.offset = BitVector::from_bytes(off, s.out_bits);
  if (s.offset.to_bytes() != off) throw DecodeError("wire: non-canonical extractor offset");
  pk.extractor = std::move(s);
  return pk;
}

}  // namespace

Bytes encode_body(const FlowMessage& msg) {
  Writer w;
  std::visit(
      [&w](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Flow1>) {
          w.bytes(m.receiver_sid);
          w.integer(std::uint64_t{m.n});
          w.integer(std::uint64_t{m.h});
          w.integer(std::uint64_t{m.k_cut});
          w.integer(std::uint64_t{m.msg_len});
          w.integer(std::uint64_t{static_cast<std::uint8_t>(m.assumption)});
          w.integer(std::uint64_t{static_cast<std::uint8_t>(m.profile)});
          w.ints(m.lambda);
          w.u16(m.vectors.size());
          for (const auto& v : m.vectors) {
            w.u16(v.size());
            for (const auto& x : v) w.ints(x.parts);
          }
        } else if constexpr (std::is_same_v<T, Flow2>) {
          w.bytes(m.sender_sid);
          put_commitments(w, m.coin_commitments);
        } else if constexpr (std::is_same_v<T, Flow3>) {
          put_commitments(w, m.coin_commitments);
        } else if constexpr (std::is_same_v<T, Flow4>) {
          put_decommitments(w, m.coin_openings);
        } else if constexpr (std::is_same_v<T, Flow5>) {
          put_decommitments(w, m.coin_openings);
          w.u16(m.openings.size());
          for (const auto& o : m.openings) {
            w.integer(std::uint64_t{o.vector});
            w.integer(std::uint64_t{o.position});
            w.ints(o.w.parts);
          }
          w.u16(m.shuffles.size());
          for (const auto& pi : m.shuffles) put_permutation(w, pi, m.shuffle_width);
        } else if constexpr (std::is_same_v<T, Flow6>) {
          w.u16(m.ciphertexts.size());
          for (const auto& c : m.ciphertexts) w.bytes(c);
          w.u16(m.keys.size());
          for (const auto& row : m.keys) {
            w.u16(row.size());
            for (const auto& pk : row) put_key(w, pk);
          }
        }
      },
      msg);
  return w.take();
}

FlowMessage decode_body(FlowTag tag, std::span<const std::uint8_t> body) {
  Reader r(body);
  FlowMessage out;
  switch (tag) {
    case FlowTag::f1: {
      Flow1 m;
      m.receiver_sid = r.bytes();
      m.n = r.small(0xFFFF);
      m.h = r.small(0xFFFF);
      m.k_cut = r.small(0xFFFF);
      m.msg_len = r.small(0xFFFF);
      const auto a = r.small(3);
      if (a < 1) throw DecodeError("wire: unknown assumption tag");
      m.assumption = static_cast<Assumption>(a);
      m.profile = static_cast<Profile>(r.small(1));
      m.lambda = r.ints();
      m.vectors.resize(r.u16());
      for (auto& v : m.vectors) {
        v.resize(r.u16());
        for (auto& x : v) x.parts = r.ints();
      }
      out = std::move(m);
      break;
    }
    case FlowTag::f2: {
      Flow2 m;
      m.sender_sid = r.bytes();
      m.coin_commitments = get_commitments(r, CommitScheme::hiding);
      out = std::move(m);
      break;
    }
    case FlowTag::f3:
      out = Flow3{get_commitments(r, CommitScheme::binding)};
      break;
    case FlowTag::f4:
      out = Flow4{get_decommitments(r)};
      break;
    case FlowTag::f5: {
      Flow5 m;
      m.coin_openings = get_decommitments(r);
      m.openings.resize(r.u16());
      for (auto& o : m.openings) {
        o.vector = r.small(0xFFFF);
        o.position = r.small(0xFFFF);
        o.w.parts = r.ints();
      }
      m.shuffles.resize(r.u16());
      for (std::size_t k = 0; k < m.shuffles.size(); ++k) {
        std::uint8_t width = 1;
        m.shuffles[k] = get_permutation(r, width);
        if (k > 0 && width != m.shuffle_width) throw DecodeError("wire: mixed permutation widths");
        m.shuffle_width = width;
      }
      out = std::move(m);
      break;
    }
    case FlowTag::f6: {
      Flow6 m;
      m.ciphertexts.resize(r.u16());
      for (auto& c : m.ciphertexts) c = r.bytes();
      m.keys.resize(r.u16());
      for (auto& row : m.keys) {
        row.resize(r.u16());
        for (auto& pk : row) pk = get_key(r);
      }
      out = std::move(m);
      break;
    }
    case FlowTag::abort:
      out = AbortFlow{};
      break;
    default:
      throw DecodeError("wire: unknown flow tag");
  }
  r.finish();
  return out;
}

FrameHeader decode_header(std::span<const std::uint8_t> header) {
  if (header.size() < kFrameHeaderBytes) throw DecodeError("wire: truncated frame header");
  if (!std::equal(kFrameMagic.begin(), kFrameMagic.end(), header.begin()))
    throw DecodeError("wire: bad magic");
  if (header[4] != kFrameVersion) throw DecodeError("wire: unsupported version");
  const std::uint8_t tag = header[5];
  if (!((tag >= 1 && tag <= 6) || tag == 0x7F)) throw DecodeError("wire: unknown flow tag");
  std::uint32_t len = 0;
  for (int k = 6; k < 10; ++k) len = (len << 8) | header[k];
  if (len > kMaxFrameBody) throw DecodeError("wire: frame body too large");
  return {static_cast<FlowTag>(tag), len};
}

Bytes encode_frame(const FlowMessage& msg) {
  Bytes body = encode_body(msg);
  if (body.size() > kMaxFrameBody) throw ParameterError("wire: frame body too large");
  Bytes out(kFrameMagic.begin(), kFrameMagic.end());
  out.push_back(kFrameVersion);
  out.push_back(static_cast<std::uint8_t>(tag_of(msg)));
  const auto len = static_cast<std::uint32_t>(body.size());
  for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(len >> s));
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

FlowMessage decode_frame(std::span<const std::uint8_t> bytes) {
  const FrameHeader hdr = decode_header(bytes);
  if (bytes.size() - kFrameHeaderBytes != hdr.body_length)
    throw DecodeError("wire: body length does not match frame size");
  return decode_body(hdr.tag, bytes.subspan(kFrameHeaderBytes));
}

}  // namespace otframe
