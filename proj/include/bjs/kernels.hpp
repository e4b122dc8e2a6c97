#pragma once

// Byte-parallel inner loops, one scalar reference variant plus vectorized
// variants chosen once at startup. Every variant must return exactly what the
// scalar reference returns; tests/test_kernels.cpp holds them to that.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace bjs::kernels {

struct KernelSet {
  std::string_view name;

  // Index of the first i < len with a[i] != b[i], or len when the ranges agree.
  std::size_t (*first_mismatch)(const std::uint8_t* a, const std::uint8_t* b, std::size_t len);

  // Number of leading bytes of p[0..max) equal to p[0]; 0 when max == 0.
  std::size_t (*run_length)(const std::uint8_t* p, std::size_t max);

  // Move-to-front recoding of in[0..len) into out[0..len). `list` is the
  // current recency list and is updated in place, so blocks can be chained.
  void (*mtf_encode)(const std::uint8_t* in, std::uint8_t* out, std::size_t len,
                     std::array<std::uint8_t, 256>& list);
};

const KernelSet& scalar();

// nullptr when the variant was not compiled in or the CPU lacks the feature.
const KernelSet* avx2();

// The variant used by the library. Picks the widest supported variant unless
// the environment variable BJS_KERNELS=scalar is set.
const KernelSet& active();

}  // namespace bjs::kernels
