#pragma once

#include <stdexcept>
#include <string>

namespace bjs {

enum class Errc {
  empty_input,
  out_of_range,
  bad_magic,
  bad_version,
  truncated,
  length_mismatch,
  corrupt_stream,
  invalid_config,
  io,
  roundtrip_mismatch,
};

const char* errc_name(Errc code) noexcept;

// All library failures are reported through this type; the code is stable,
// the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace bjs
