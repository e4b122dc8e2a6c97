#include "bjs/kernels.hpp"

#include <cstring>

namespace bjs::kernels {
namespace {

std::size_t first_mismatch_scalar(const std::uint8_t* a, const std::uint8_t* b, std::size_t len) {
  std::size_t i = 0;
  // word at a time, then locate the byte
  for (; i + 8 <= len; i += 8) {
    std::uint64_t x, y;
    std::memcpy(&x, a + i, 8);
    std::memcpy(&y, b + i, 8);
    if (x != y) break;
  }
  for (; i < len; ++i) {
    if (a[i] != b[i]) return i;
  }
  return len;
}

std::size_t run_length_scalar(const std::uint8_t* p, std::size_t max) {
  if (max == 0) return 0;
  const std::uint8_t c = p[0];
  std::size_t i = 1;
  while (i < max && p[i] == c) ++i;
  return i;
}

void mtf_encode_scalar(const std::uint8_t* in, std::uint8_t* out, std::size_t len,
                       std::array<std::uint8_t, 256>& list) {
  for (std::size_t i = 0; i < len; ++i) {
    const std::uint8_t c = in[i];
    std::size_t idx = 0;
    while (list[idx] != c) ++idx;
    out[i] = static_cast<std::uint8_t>(idx);
    std::memmove(list.data() + 1, list.data(), idx);
    list[0] = c;
  }
}

}  // namespace

const KernelSet& scalar() {
  static const KernelSet set{"scalar", first_mismatch_scalar, run_length_scalar, mtf_encode_scalar};
  return set;
}

}  // namespace bjs::kernels
