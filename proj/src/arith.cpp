#include "bjs/arith.hpp"

#include <array>
#include <cstdint>
#include <string>

#include "bjs/error.hpp"

namespace bjs {

namespace {

constexpr std::size_t kSymbols = 257;
constexpr std::size_t kEndOfStream = 256;
constexpr std::uint32_t kMaxTotal = 1u << 14;

constexpr int kCodeBits = 32;
constexpr std::uint64_t kTop = (std::uint64_t{1} << kCodeBits) - 1;
constexpr std::uint64_t kHalf = std::uint64_t{1} << (kCodeBits - 1);
constexpr std::uint64_t kFirstQuarter = kHalf / 2;
constexpr std::uint64_t kThirdQuarter = kHalf + kFirstQuarter;

// The decoder keeps a kCodeBits window while the encoder flushes two bits,
// so a well-formed stream is read past its end by at most this many bits.
constexpr std::size_t kMaxOverrunBits = kCodeBits - 2;

// Frequencies with a Fenwick tree for cumulative counts.
class AdaptiveModel {
 public:
  AdaptiveModel() {
    freq_.fill(1);
    rebuild();
  }

  std::uint32_t total() const { return total_; }
  std::uint32_t freq(std::size_t sym) const { return freq_[sym]; }

  // Sum of frequencies of symbols below `sym`.
  std::uint32_t cum_low(std::size_t sym) const {
    std::uint32_t s = 0;
    for (std::size_t i = sym; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

  // Symbol whose cumulative interval contains `target` (< total).
  std::size_t find(std::uint32_t target) const {
    std::size_t pos = 0;
    for (std::size_t step = kTreeTop; step > 0; step >>= 1) {
      const std::size_t next = pos + step;
      if (next <= kSymbols && tree_[next] <= target) {
        pos = next;
        target -= tree_[next];
      }
    }
    return pos;
  }

  void update(std::size_t sym) {
    ++freq_[sym];
    ++total_;
    for (std::size_t i = sym + 1; i <= kSymbols; i += i & (~i + 1)) ++tree_[i];
    if (total_ > kMaxTotal) {
      for (auto& f : freq_) f = (f + 1) / 2;
      rebuild();
    }
  }

 private:
  static constexpr std::size_t kTreeTop = 256;  // largest power of two <= kSymbols

  void rebuild() {
    tree_.fill(0);
    total_ = 0;
    for (std::size_t s = 0; s < kSymbols; ++s) {
      total_ += freq_[s];
      for (std::size_t i = s + 1; i <= kSymbols; i += i & (~i + 1)) tree_[i] += freq_[s];
    }
  }

  std::array<std::uint32_t, kSymbols> freq_{};
  std::array<std::uint32_t, kSymbols + 1> tree_{};
  std::uint32_t total_ = 0;
};

class BitWriter {
 public:
  void put(int bit) {
    acc_ = static_cast<Byte>((acc_ << 1) | bit);
    if (++used_ == 8) {
      out_.push_back(acc_);
      acc_ = 0;
      used_ = 0;
    }
  }

  Bytes finish() {
    while (used_ != 0) put(0);
    return std::move(out_);
  }

 private:
  Bytes out_;
  Byte acc_ = 0;
  int used_ = 0;
};

class BitReader {
 public:
  explicit BitReader(ByteView data) : data_(data) {}

  int get() {
    const std::size_t byte = pos_ >> 3;
    const int shift = 7 - static_cast<int>(pos_ & 7);
    ++pos_;
    if (byte >= data_.size()) return 0;
    return (data_[byte] >> shift) & 1;
  }

  std::size_t overrun_bits() const {
    const std::size_t available = data_.size() * 8;
    return pos_ > available ? pos_ - available : 0;
  }

 private:
  ByteView data_;
  std::size_t pos_ = 0;
};

class Encoder {
 public:
  void encode(std::size_t sym, AdaptiveModel& model) {
    const std::uint64_t range = high_ - low_ + 1;
    const std::uint64_t total = model.total();
    const std::uint64_t lo = model.cum_low(sym);
    const std::uint64_t hi = lo + model.freq(sym);
    high_ = low_ + range * hi / total - 1;
    low_ = low_ + range * lo / total;
    for (;;) {
      if (high_ < kHalf) {
        emit(0);
      } else if (low_ >= kHalf) {
        emit(1);
        low_ -= kHalf;
        high_ -= kHalf;
      } else if (low_ >= kFirstQuarter && high_ < kThirdQuarter) {
        ++pending_;
        low_ -= kFirstQuarter;
        high_ -= kFirstQuarter;
      } else {
        break;
      }
      low_ <<= 1;
      high_ = (high_ << 1) | 1;
    }
    model.update(sym);
  }

  Bytes finish() {
    ++pending_;
    emit(low_ < kFirstQuarter ? 0 : 1);
    return bits_.finish();
  }

 private:
  void emit(int bit) {
    bits_.put(bit);
    for (; pending_ > 0; --pending_) bits_.put(bit ^ 1);
  }

  BitWriter bits_;
  std::uint64_t low_ = 0;
  std::uint64_t high_ = kTop;
  std::uint64_t pending_ = 0;
};

}  // namespace

Bytes ac_encode(ByteView data) {
  AdaptiveModel model;
  Encoder enc;
  for (Byte b : data) enc.encode(b, model);
  enc.encode(kEndOfStream, model);
  return enc.finish();
}

Bytes ac_decode(ByteView data, std::optional<std::size_t> expected_length, std::size_t max_length) {
  AdaptiveModel model;
  BitReader bits(data);
  std::uint64_t low = 0;
  std::uint64_t high = kTop;
  std::uint64_t value = 0;
  for (int i = 0; i < kCodeBits; ++i) value = (value << 1) | static_cast<std::uint64_t>(bits.get());

  const std::size_t limit = expected_length ? std::min(*expected_length, max_length) : max_length;
  Bytes out;
  if (expected_length) out.reserve(*expected_length);
  for (;;) {
    const std::uint64_t range = high - low + 1;
    const std::uint64_t total = model.total();
    const auto target = static_cast<std::uint32_t>(((value - low + 1) * total - 1) / range);
    const std::size_t sym = model.find(target);
    const std::uint64_t lo = model.cum_low(sym);
    const std::uint64_t hi = lo + model.freq(sym);
    high = low + range * hi / total - 1;
    low = low + range * lo / total;
    for (;;) {
      if (high < kHalf) {
        // nothing to subtract
      } else if (low >= kHalf) {
        low -= kHalf;
        high -= kHalf;
        value -= kHalf;
      } else if (low >= kFirstQuarter && high < kThirdQuarter) {
        low -= kFirstQuarter;
        high -= kFirstQuarter;
        value -= kFirstQuarter;
      } else {
        break;
      }
      low <<= 1;
      high = (high << 1) | 1;
      value = (value << 1) | static_cast<std::uint64_t>(bits.get());
    }
    if (bits.overrun_bits() > kMaxOverrunBits) {
      fail(Errc::truncated, "arithmetic-coded stream ends prematurely");
    }
    model.update(sym);

    if (sym == kEndOfStream) break;
    if (out.size() == limit) {
      if (expected_length && out.size() == *expected_length) {
        fail(Errc::corrupt_stream, "end-of-stream marker missing after " + std::to_string(out.size()) + " symbols");
      }
      fail(Errc::length_mismatch, "decoded stream exceeds " + std::to_string(limit) + " symbols");
    }
    out.push_back(static_cast<Byte>(sym));
  }
  if (expected_length && out.size() != *expected_length) {
    fail(Errc::corrupt_stream, "end-of-stream marker after " + std::to_string(out.size()) + " symbols, expected " +
                                   std::to_string(*expected_length));
  }
  return out;
}

}  // namespace bjs
