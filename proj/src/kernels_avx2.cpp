#include "otframe/kernels.hpp"

#include <bit>

#include <immintrin.h>

namespace otframe::kernels::avx2 {

bool parity_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    acc = _mm256_xor_si256(acc, _mm256_and_si256(va, vb));
  }
  const __m128i folded =
      _mm_xor_si128(_mm256_castsi256_si128(acc), _mm256_extracti128_si256(acc, 1));
  std::uint64_t tail = static_cast<std::uint64_t>(_mm_cvtsi128_si64(folded)) ^
                       static_cast<std::uint64_t>(_mm_extract_epi64(folded, 1));
  for (; i < words; ++i) tail ^= a[i] & b[i];
  return (std::popcount(tail) & 1) != 0;
}

void xor_into(std::uint8_t* dst, const std::uint8_t* src, std::size_t len) {
  std::size_t i = 0;
  for (; i + 32 <= len; i += 32) {
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(d, s));
  }
  for (; i < len; ++i) dst[i] ^= src[i];
}

}  // namespace otframe::kernels::avx2
