#pragma once

// The Burrows-Wheeler transform and the bijective string-sorting transform,
// forward and inverse, over byte strings.
//
// Every transform works on non-empty input and throws Error(empty_input)
// otherwise. Outputs always have the length of the input.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bjs/bytes.hpp"
#include "bjs/rotation.hpp"

namespace bjs {

// A permutation of {0..n-1}. Built by match_permutation: theta[k] is the slot
// of the rotation that cyclically precedes the rotation in slot k.
class Theta {
 public:
  Theta() = default;
  explicit Theta(std::vector<std::uint32_t> mapping) : map_(std::move(mapping)) {}

  std::size_t size() const noexcept { return map_.size(); }
  std::uint32_t operator[](std::size_t k) const { return map_[k]; }
  std::span<const std::uint32_t> mapping() const noexcept { return map_; }

  bool is_permutation() const;

  // Lengths of the cycles, listed in order of their smallest element.
  std::vector<std::size_t> cycle_lengths() const;

 private:
  std::vector<std::uint32_t> map_;
};

// Lyndon factorization of a string as cut positions: factor i is
// [boundaries[i], boundaries[i + 1]). The first boundary is 0, the last is
// the string length.
class LyndonFactorization {
 public:
  LyndonFactorization() = default;
  explicit LyndonFactorization(std::vector<std::uint32_t> boundaries) : bounds_(std::move(boundaries)) {}

  std::size_t factor_count() const noexcept { return bounds_.empty() ? 0 : bounds_.size() - 1; }
  std::size_t length() const noexcept { return bounds_.empty() ? 0 : bounds_.back(); }
  std::uint32_t factor_start(std::size_t i) const { return bounds_[i]; }
  std::uint32_t factor_length(std::size_t i) const { return bounds_[i + 1] - bounds_[i]; }
  std::span<const std::uint32_t> boundaries() const noexcept { return bounds_; }

  ByteView factor(ByteView text, std::size_t i) const { return text.subspan(factor_start(i), factor_length(i)); }

  // Releases the boundaries, e.g. to build a WordTable without copying.
  std::vector<std::uint32_t> take_boundaries() && { return std::move(bounds_); }

 private:
  std::vector<std::uint32_t> bounds_;
};

// The rotations of one string. `words` borrows the input, which must outlive
// the list.
struct RotationList {
  WordTable words;
  std::vector<Rotation> rotations;
};

// All |s| rotations, offsets 0..|s|-1. Repeated rotations of a periodic
// string are kept.
RotationList cyclic_rotations(ByteView s);

// Sorts the rotations under `order` (equal ones by word id, then offset) and
// returns their last characters.
Bytes last_column(const RotationList& list, OrderKind order);

struct BwtResult {
  Bytes transform;
  // Slot of s itself (offset 0) among the sorted rotations.
  std::size_t index = 0;
};

BwtResult bwt_forward(ByteView s);

// Occurrence counting, prefix sums, then one left-to-right scan. Defined for
// any input, image or not; an empty input gives an empty permutation.
Theta match_permutation(ByteView eta);

// Fills the output last to first, starting at slot `start` and following
// theta. start = 0 yields the smallest rotation; start = the index from
// bwt_forward yields the original string.
Bytes thread_from(ByteView eta, const Theta& theta, std::size_t start);

// Lexicographically smallest rotation of any preimage.
Bytes bwt_inverse(ByteView eta);

// Exact inverse of bwt_forward.
Bytes bwt_inverse_indexed(ByteView eta, std::size_t index);

// Chen-Fox-Lyndon factorization (non-increasing Lyndon factors) by Duval's
// algorithm. O(n) time, O(1) working space besides the result.
LyndonFactorization lyndon_factorize(ByteView s);

// Last column of the jointly sorted rotations of the Lyndon factors.
// Bijective under infinite_periodic. Under standard_lex the map is well
// defined but not injective (e.g. "abb" and "bab" collide), so
// bwts_inverse only inverts the infinite_periodic image.
Bytes bwts_forward(ByteView s, OrderKind order = OrderKind::infinite_periodic);

// Walks every cycle of theta, each starting at its smallest slot, filling the
// output last to first. One cycle yields one factor.
Bytes multi_thread(ByteView eta, const Theta& theta);

Bytes bwts_inverse(ByteView eta);

}  // namespace bjs
