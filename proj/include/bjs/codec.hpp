#pragma once

// Run-length and move-to-front stages of the compression pipeline.

#include "bjs/bytes.hpp"

namespace bjs {

// After three identical octets a count octet (0..255) always follows, giving
// the number of further repetitions. Longer runs start over with a new triple.
Bytes rle_encode(ByteView data);

// Throws Error(truncated) when a triple is not followed by its count octet.
Bytes rle_decode(ByteView data);

// Recency list starts as 0, 1, ..., 255.
Bytes mtf_encode(ByteView data);
Bytes mtf_decode(ByteView data);

}  // namespace bjs
