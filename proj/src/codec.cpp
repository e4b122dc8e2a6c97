#include "bjs/codec.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <numeric>

#include "bjs/error.hpp"
#include "bjs/kernels.hpp"

namespace bjs {

namespace {

constexpr std::size_t kRunLiterals = 3;
constexpr std::size_t kMaxExtra = 255;

std::array<Byte, 256> identity_list() {
  std::array<Byte, 256> list{};
  std::iota(list.begin(), list.end(), Byte{0});
  return list;
}

}  // namespace

Bytes rle_encode(ByteView data) {
  const auto& k = kernels::active();
  Bytes out;
  out.reserve(data.size() + data.size() / 64 + 4);
  std::size_t i = 0;
  while (i < data.size()) {
    const Byte c = data[i];
    std::size_t run = k.run_length(data.data() + i, data.size() - i);
    i += run;
    while (run >= kRunLiterals) {
      const std::size_t extra = std::min(run - kRunLiterals, kMaxExtra);
      out.insert(out.end(), kRunLiterals, c);
      out.push_back(static_cast<Byte>(extra));
      run -= kRunLiterals + extra;
    }
    out.insert(out.end(), run, c);
  }
  return out;
}

Bytes rle_decode(ByteView data) {
  Bytes out;
  out.reserve(data.size() + data.size() / 8);
  std::size_t same = 0;
  Byte prev = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Byte c = data[i];
    same = (same > 0 && c == prev) ? same + 1 : 1;
    prev = c;
    out.push_back(c);
    if (same == kRunLiterals) {
      if (++i == data.size()) fail(Errc::truncated, "run-length stream ends before a count octet");
      out.insert(out.end(), data[i], c);
      same = 0;
    }
  }
  return out;
}

Bytes mtf_encode(ByteView data) {
  Bytes out(data.size());
  auto list = identity_list();
  kernels::active().mtf_encode(data.data(), out.data(), data.size(), list);
  return out;
}

Bytes mtf_decode(ByteView data) {
  Bytes out(data.size());
  auto list = identity_list();
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::size_t idx = data[i];
    const Byte c = list[idx];
    out[i] = c;
    std::memmove(list.data() + 1, list.data(), idx);
    list[0] = c;
  }
  return out;
}

}  // namespace bjs
