#pragma once
//
// Bit-packed inner loops used by the GF(2) extractor and the pad XOR.
// Each kernel has a portable scalar reference and an AVX2 variant; the
// variant is picked once at runtime from the CPU feature bits (override with
// OTFRAME_KERNELS=scalar).
//

#include <cstddef>
#include <cstdint>

namespace otframe::kernels {

enum class Isa { scalar, avx2 };

// Parity of popcount(a & b) over `words` 64-bit words.
bool parity_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
// dst[i] ^= src[i] for i < len.
void xor_into(std::uint8_t* dst, const std::uint8_t* src, std::size_t len);

Isa active_isa();
bool avx2_supported();
// Test hook: pin the dispatch target. Requesting avx2 on a CPU without it is
// ignored.
void set_isa(Isa isa);

namespace scalar {
bool parity_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
void xor_into(std::uint8_t* dst, const std::uint8_t* src, std::size_t len);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define OTFRAME_HAVE_AVX2_KERNELS 1
namespace avx2 {
bool parity_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
void xor_into(std::uint8_t* dst, const std::uint8_t* src, std::size_t len);
}  // namespace avx2
#endif

}  // namespace otframe::kernels
