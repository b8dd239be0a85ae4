#pragma once
//
// Byte-exact frame encoding:
//
//   "OTF1" | version 0x01 | tag (0x01..0x06, 0x7F abort) | u32 BE body length | body
//
// Body fields: integers as u16 length + minimal big-endian magnitude (zero is
// the empty string, a leading zero byte is rejected); byte strings as u16
// length + raw bytes; vectors as u16 count + elements; permutations as one
// width byte (1 or 2) followed by a u16 count and the images.
//

#include <array>
#include <span>

#include "otframe/protocol.hpp"

namespace otframe {

inline constexpr std::array<std::uint8_t, 4> kFrameMagic = {'O', 'T', 'F', '1'};
inline constexpr std::uint8_t kFrameVersion = 0x01;
inline constexpr std::size_t kFrameHeaderBytes = 10;
inline constexpr std::uint32_t kMaxFrameBody = 64u << 20;

struct FrameHeader {
  FlowTag tag;
  std::uint32_t body_length;
};

// Validates magic, version, tag and the body length cap.
FrameHeader decode_header(std::span<const std::uint8_t> header);

Bytes encode_body(const FlowMessage& msg);
FlowMessage decode_body(FlowTag tag, std::span<const std::uint8_t> body);

Bytes encode_frame(const FlowMessage& msg);
// The span must hold exactly one frame.
FlowMessage decode_frame(std::span<const std::uint8_t> bytes);

}  // namespace otframe
