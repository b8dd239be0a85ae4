#include <atomic>
#include <cstdlib>
#include <string_view>

#include "otframe/kernels.hpp"

namespace otframe::kernels {
namespace {

struct Table {
  bool (*parity_and)(const std::uint64_t*, const std::uint64_t*, std::size_t);
  void (*xor_into)(std::uint8_t*, const std::uint8_t*, std::size_t);
  Isa isa;
};

constexpr Table kScalar{&scalar::parity_and, &scalar::xor_into, Isa::scalar};
#ifdef OTFRAME_HAVE_AVX2_KERNELS
constexpr Table kAvx2{&avx2::parity_and, &avx2::xor_into, Isa::avx2};
#endif

const Table* pick() {
  const char* env = std::getenv("OTFRAME_KERNELS");
  if (env != nullptr && std::string_view(env) == "scalar") return &kScalar;
#ifdef OTFRAME_HAVE_AVX2_KERNELS
  if (avx2_supported()) return &kAvx2;
#endif
  return &kScalar;
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> table{pick()};
  return table;
}

}  // namespace

bool avx2_supported() {
#ifdef OTFRAME_HAVE_AVX2_KERNELS
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() { return current().load(std::memory_order_relaxed)->isa; }

void set_isa(Isa isa) {
#ifdef OTFRAME_HAVE_AVX2_KERNELS
  if (isa == Isa::avx2 && avx2_supported()) {
    current().store(&kAvx2);
    return;
  }
#endif
  if (isa == Isa::scalar) current().store(&kScalar);
}

bool parity_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  return current().load(std::memory_order_relaxed)->parity_and(a, b, words);
}

void xor_into(std::uint8_t* dst, const std::uint8_t* src, std::size_t len) {
  current().load(std::memory_order_relaxed)->xor_into(dst, src, len);
}

}  // namespace otframe::kernels
