#include "bjs/kernels.hpp"

#include <cstring>

#if defined(__x86_64__) || defined(__i386__)
#define BJS_HAVE_AVX2_KERNELS 1
#include <immintrin.h>
#endif

namespace bjs::kernels {

#ifdef BJS_HAVE_AVX2_KERNELS
namespace {

__attribute__((target("avx2"))) std::size_t first_mismatch_avx2(const std::uint8_t* a,
                                                                 const std::uint8_t* b,
                                                                 std::size_t len) {
  std::size_t i = 0;
  for (; i + 32 <= len; i += 32) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const auto eq = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(va, vb)));
    if (eq != 0xFFFFFFFFu) return i + static_cast<std::size_t>(__builtin_ctz(~eq));
  }
  for (; i < len; ++i) {
    if (a[i] != b[i]) return i;
  }
  return len;
}

__attribute__((target("avx2"))) std::size_t run_length_avx2(const std::uint8_t* p, std::size_t max) {
  if (max == 0) return 0;
  const __m256i needle = _mm256_set1_epi8(static_cast<char>(p[0]));
  std::size_t i = 1;
  for (; i + 32 <= max; i += 32) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
    const auto eq = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(v, needle)));
    if (eq != 0xFFFFFFFFu) return i + static_cast<std::size_t>(__builtin_ctz(~eq));
  }
  while (i < max && p[i] == p[0]) ++i;
  return i;
}

// The recency list lives in eight 32-byte lanes; the rank of a symbol is found
// with one compare per lane instead of a byte walk.
__attribute__((target("avx2"))) void mtf_encode_avx2(const std::uint8_t* in, std::uint8_t* out,
                                                     std::size_t len,
                                                     std::array<std::uint8_t, 256>& list) {
  alignas(32) std::uint8_t table[256];
  std::memcpy(table, list.data(), 256);
  for (std::size_t i = 0; i < len; ++i) {
    const std::uint8_t c = in[i];
    std::size_t idx = 0;
    if (table[0] != c) {
      const __m256i needle = _mm256_set1_epi8(static_cast<char>(c));
      for (std::size_t lane = 0; lane < 256; lane += 32) {
        const __m256i v = _mm256_load_si256(reinterpret_cast<const __m256i*>(table + lane));
        const auto eq = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(v, needle)));
        if (eq != 0) {
          idx = lane + static_cast<std::size_t>(__builtin_ctz(eq));
          break;
        }
      }
      std::memmove(table + 1, table, idx);
      table[0] = c;
    }
    out[i] = static_cast<std::uint8_t>(idx);
  }
  std::memcpy(list.data(), table, 256);
}

}  // namespace

const KernelSet* avx2() {
  static const bool supported = __builtin_cpu_supports("avx2");
  static const KernelSet set{"avx2", first_mismatch_avx2, run_length_avx2, mtf_encode_avx2};
  return supported ? &set : nullptr;
}

#else

const KernelSet* avx2() { return nullptr; }

#endif

}  // namespace bjs::kernels
