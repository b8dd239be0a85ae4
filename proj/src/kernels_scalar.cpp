#include "otframe/kernels.hpp"

#include <bit>

namespace otframe::kernels::scalar {

bool parity_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < words; ++i) acc ^= a[i] & b[i];
  return (std::popcount(acc) & 1) != 0;
}

void xor_into(std::uint8_t* dst, const std::uint8_t* src, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) dst[i] ^= src[i];
}

}  // namespace otframe::kernels::scalar
