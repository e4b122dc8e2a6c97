#pragma once

// Rotations of words, the two order relations on them, and the engines that
// sort every rotation of a set of words at once.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "bjs/bytes.hpp"

namespace bjs {

enum class OrderKind : std::uint8_t {
  // Finite-string lexicographic order; a proper prefix is smaller.
  standard_lex = 0,
  // Compare the infinite repetitions a^inf and b^inf.
  infinite_periodic = 1,
};

std::string_view order_name(OrderKind kind) noexcept;

// One cyclic rotation of a word, as a triple of scalars. Character j of the
// rotation is word[(offset + j) mod length] for any integer j.
struct Rotation {
  std::uint32_t word_id = 0;
  std::uint32_t offset = 0;
  std::uint32_t length = 0;

  friend bool operator==(const Rotation&, const Rotation&) = default;
};

// A list of words stored back to back. Word i occupies
// [boundaries[i], boundaries[i + 1]) of the text, so a global position is also
// a rotation handle: position p names the rotation of its word starting at p.
//
// A table either borrows the text (the caller keeps it alive) or owns a copy.
class WordTable {
 public:
  WordTable() = default;

  // Borrows `text`. `boundaries` must start at 0, be strictly increasing and
  // end at text.size().
  WordTable(ByteView text, std::vector<std::uint32_t> boundaries);

  // Copies the words into owned storage; every word must be non-empty.
  static WordTable from_words(std::span<const Bytes> words);

  // The whole text as one word.
  static WordTable single(ByteView text);

  WordTable(const WordTable& other);
  WordTable(WordTable&& other) noexcept;
  WordTable& operator=(const WordTable& other);
  WordTable& operator=(WordTable&& other) noexcept;
  ~WordTable() = default;

  ByteView text() const noexcept { return text_; }
  std::size_t total_length() const noexcept { return text_.size(); }
  std::size_t word_count() const noexcept { return boundaries_.empty() ? 0 : boundaries_.size() - 1; }
  std::span<const std::uint32_t> boundaries() const noexcept { return boundaries_; }

  std::uint32_t word_start(std::size_t id) const { return boundaries_[id]; }
  std::uint32_t word_length(std::size_t id) const { return boundaries_[id + 1] - boundaries_[id]; }
  ByteView word(std::size_t id) const { return text_.subspan(word_start(id), word_length(id)); }

  // Word containing global position p. O(log word_count).
  std::size_t word_of(std::size_t p) const;

  Rotation rotation_at(std::size_t p) const;
  std::size_t position_of(const Rotation& r) const { return word_start(r.word_id) + r.offset; }

  Byte char_at(const Rotation& r, std::int64_t j) const;

  // Last character of the rotation starting at global position p.
  Byte last_char_at(std::size_t p) const;

  // Position reached by moving `shift` characters forward from p, wrapping
  // inside p's word.
  std::size_t advance(std::size_t p, std::uint64_t shift) const;

  Bytes materialize(const Rotation& r) const;

 private:
  void rebind() noexcept;

  Bytes owned_;
  bool owns_ = false;
  ByteView text_;
  std::vector<std::uint32_t> boundaries_;
};

// Compares rotation `offset_a` of word `a` with rotation `offset_b` of word `b`.
//
// infinite_periodic inspects at most |a| + |b| character pairs: two periodic
// expansions that agree that far agree everywhere. standard_lex inspects at
// most min(|a|, |b|). If `inspected` is non-null the number of character pairs
// read is added to it.
std::weak_ordering compare_rotations(ByteView a, std::size_t offset_a, ByteView b, std::size_t offset_b,
                                     OrderKind kind, std::size_t* inspected = nullptr);

std::weak_ordering compare_rotations(const WordTable& table, const Rotation& a, const Rotation& b,
                                     OrderKind kind, std::size_t* inspected = nullptr);

// Whole-word comparison, i.e. both rotations at offset 0.
inline std::weak_ordering compare_words(ByteView a, ByteView b, OrderKind kind) {
  return compare_rotations(a, 0, b, 0, kind);
}

enum class SortEngine {
  // prefix_doubling for infinite_periodic; suffix_array for standard_lex on a
  // single primitive word; comparison otherwise.
  automatic,
  // Rank doubling over periodic expansions. infinite_periodic only (or any
  // order when all words have equal length).
  prefix_doubling,
  // std::sort with the bounded comparator.
  comparison,
  // Suffix array of ww restricted to offsets < |w|. A single primitive word only.
  suffix_array,
};

// Every rotation of every word, as global positions in sorted order. Rotations
// comparing equal are ordered by position, which is (word id, offset)
// ascending.
std::vector<std::uint32_t> sort_rotation_positions(const WordTable& table, OrderKind kind,
                                                   SortEngine engine = SortEngine::automatic);

std::vector<Rotation> sort_all_rotations(const WordTable& table, OrderKind kind,
                                         SortEngine engine = SortEngine::automatic);

// Rotation::word_id indexes `words`.
std::vector<Rotation> sort_all_rotations(std::span<const Bytes> words, OrderKind kind);

// Starting positions of the suffixes of s in ascending lexicographic order.
std::vector<std::uint32_t> suffix_array(ByteView s);

// True when s is not u^k for any shorter u. s must be non-empty.
bool is_primitive(ByteView s);

}  // namespace bjs
