#pragma once

// Adaptive order-0 arithmetic coder over 257 symbols: the 256 octet values
// and an end-of-stream marker.
//
// Model: every frequency starts at 1 and grows by 1 per coded symbol; when
// the total exceeds 2^14 all frequencies are halved, rounding up. Coder:
// 32-bit integer range with underflow (pending bit) handling, bits packed
// MSB first, zero padded to a whole octet.

#include <cstddef>
#include <limits>
#include <optional>

#include "bjs/bytes.hpp"

namespace bjs {

Bytes ac_encode(ByteView data);

// Decodes up to the end-of-stream symbol. With `expected_length` the symbol
// count must match exactly. Decoding more than `max_length` symbols, a
// misplaced end-of-stream marker or running out of input all throw Error
// (corrupt_stream, length_mismatch or truncated).
Bytes ac_decode(ByteView data, std::optional<std::size_t> expected_length = std::nullopt,
                std::size_t max_length = std::numeric_limits<std::size_t>::max());

}  // namespace bjs
