#include "bjs/error.hpp"

namespace bjs {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::empty_input:
      return "empty input";
    case Errc::out_of_range:
      return "out of range";
    case Errc::bad_magic:
      return "bad magic";
    case Errc::bad_version:
      return "bad version";
    case Errc::truncated:
      return "truncated";
    case Errc::length_mismatch:
      return "length mismatch";
    case Errc::corrupt_stream:
      return "corrupt stream";
    case Errc::invalid_config:
      return "invalid configuration";
    case Errc::io:
      return "i/o error";
    case Errc::roundtrip_mismatch:
      return "round-trip mismatch";
  }
  return "unknown error";
}

}  // namespace bjs
