#include "bjs/rotation.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>
#include <utility>

#include "bjs/error.hpp"
#include "bjs/kernels.hpp"

namespace bjs {

std::string_view order_name(OrderKind kind) noexcept {
  switch (kind) {
    case OrderKind::standard_lex:
      return "standard_lex";
    case OrderKind::infinite_periodic:
      return "infinite_periodic";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// WordTable

namespace {

constexpr std::size_t kMaxTotalLength = std::numeric_limits<std::uint32_t>::max() - 1;

void check_total_length(std::size_t n) {
  if (n > kMaxTotalLength) {
    fail(Errc::out_of_range, "input of " + std::to_string(n) + " bytes exceeds the 32-bit position limit");
  }
}

}  // namespace

WordTable::WordTable(ByteView text, std::vector<std::uint32_t> boundaries)
    : text_(text), boundaries_(std::move(boundaries)) {
  check_total_length(text_.size());
  if (boundaries_.size() < 2 || boundaries_.front() != 0 || boundaries_.back() != text_.size()) {
    fail(Errc::out_of_range, "word boundaries do not cover the text");
  }
  for (std::size_t i = 1; i < boundaries_.size(); ++i) {
    if (boundaries_[i] <= boundaries_[i - 1]) fail(Errc::empty_input, "empty word in word table");
  }
}

WordTable WordTable::from_words(std::span<const Bytes> words) {
  if (words.empty()) fail(Errc::empty_input, "empty word list");
  WordTable t;
  t.boundaries_.reserve(words.size() + 1);
  t.boundaries_.push_back(0);
  std::size_t total = 0;
  for (const Bytes& w : words) {
    if (w.empty()) fail(Errc::empty_input, "empty word in word list");
    total += w.size();
    check_total_length(total);
    t.owned_.insert(t.owned_.end(), w.begin(), w.end());
    t.boundaries_.push_back(static_cast<std::uint32_t>(total));
  }
  t.owns_ = true;
  t.rebind();
  return t;
}

WordTable WordTable::single(ByteView text) {
  if (text.empty()) fail(Errc::empty_input, "empty string");
  check_total_length(text.size());
  return WordTable(text, {0, static_cast<std::uint32_t>(text.size())});
}

WordTable::WordTable(const WordTable& other)
    : owned_(other.owned_), owns_(other.owns_), text_(other.text_), boundaries_(other.boundaries_) {
  rebind();
}

WordTable::WordTable(WordTable&& other) noexcept
    : owned_(std::move(other.owned_)),
      owns_(other.owns_),
      text_(other.text_),
      boundaries_(std::move(other.boundaries_)) {
  rebind();
}

WordTable& WordTable::operator=(const WordTable& other) {
  if (this != &other) {
    owned_ = other.owned_;
    owns_ = other.owns_;
    text_ = other.text_;
    boundaries_ = other.boundaries_;
    rebind();
  }
  return *this;
}

WordTable& WordTable::operator=(WordTable&& other) noexcept {
  owned_ = std::move(other.owned_);
  owns_ = other.owns_;
  text_ = other.text_;
  boundaries_ = std::move(other.boundaries_);
  rebind();
  return *this;
}

void WordTable::rebind() noexcept {
  if (owns_) text_ = ByteView(owned_);
}

std::size_t WordTable::word_of(std::size_t p) const {
  auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), static_cast<std::uint32_t>(p));
  return static_cast<std::size_t>(it - boundaries_.begin()) - 1;
}

Rotation WordTable::rotation_at(std::size_t p) const {
  const std::size_t id = word_of(p);
  return Rotation{static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(p - word_start(id)), word_length(id)};
}

Byte WordTable::char_at(const Rotation& r, std::int64_t j) const {
  const auto len = static_cast<std::int64_t>(r.length);
  std::int64_t k = (static_cast<std::int64_t>(r.offset) + j) % len;
  if (k < 0) k += len;
  return text_[word_start(r.word_id) + static_cast<std::size_t>(k)];
}

Byte WordTable::last_char_at(std::size_t p) const {
  const std::size_t id = word_of(p);
  const std::size_t start = word_start(id);
  return text_[p == start ? start + word_length(id) - 1 : p - 1];
}

std::size_t WordTable::advance(std::size_t p, std::uint64_t shift) const {
  const std::size_t id = word_of(p);
  const std::uint64_t start = word_start(id);
  const std::uint64_t len = word_length(id);
  return static_cast<std::size_t>(start + (p - start + shift) % len);
}

Bytes WordTable::materialize(const Rotation& r) const {
  ByteView w = word(r.word_id);
  Bytes out;
  out.reserve(w.size());
  out.insert(out.end(), w.begin() + r.offset, w.end());
  out.insert(out.end(), w.begin(), w.begin() + r.offset);
  return out;
}

// ---------------------------------------------------------------------------
// Comparison

std::weak_ordering compare_rotations(ByteView a, std::size_t offset_a, ByteView b, std::size_t offset_b,
                                     OrderKind kind, std::size_t* inspected) {
  const std::size_t la = a.size();
  const std::size_t lb = b.size();
  if (la == 0 || lb == 0) return la <=> lb;

  const auto& k = kernels::active();
  const std::size_t budget = kind == OrderKind::infinite_periodic ? la + lb : std::min(la, lb);
  std::size_t ia = offset_a % la;
  std::size_t ib = offset_b % lb;
  std::size_t done = 0;
  while (done < budget) {
    // largest stretch where neither rotation wraps
    const std::size_t chunk = std::min({la - ia, lb - ib, budget - done});
    const std::size_t at = k.first_mismatch(a.data() + ia, b.data() + ib, chunk);
    if (at < chunk) {
      if (inspected != nullptr) *inspected += at + 1;
      return a[ia + at] <=> b[ib + at];
    }
    if (inspected != nullptr) *inspected += chunk;
    done += chunk;
    ia += chunk;
    ib += chunk;
    if (ia == la) ia = 0;
    if (ib == lb) ib = 0;
  }
  if (kind == OrderKind::standard_lex) return la <=> lb;
  return std::weak_ordering::equivalent;
}

std::weak_ordering compare_rotations(const WordTable& table, const Rotation& a, const Rotation& b,
                                     OrderKind kind, std::size_t* inspected) {
  return compare_rotations(table.word(a.word_id), a.offset, table.word(b.word_id), b.offset, kind, inspected);
}

// ---------------------------------------------------------------------------
// Prefix doubling
//
// Shared by the rotation and suffix sorters. `sa` holds positions grouped by
// rank; `rank[p]` is the index of the last slot of p's group, so ranks stay
// consistent with the final order while groups split. Each round sorts the
// unsorted groups by the rank of the position `h` characters further on.
// Ranks may already be refined earlier in the same round; they only ever
// order more finely, never against the final order.

namespace {

using Group = std::pair<std::uint32_t, std::uint32_t>;  // inclusive slot range

constexpr std::uint32_t kNoSuccessor = std::numeric_limits<std::uint32_t>::max();
constexpr std::size_t kBuckets = 256 * 257;

// Counting sort on a two-character key in [0, kBuckets). Stable in position.
template <class KeyFn>
std::vector<Group> bucket_by_key(std::size_t n, std::vector<std::uint32_t>& sa, std::vector<std::uint32_t>& rank,
                                 KeyFn key) {
  std::vector<std::uint32_t> start(kBuckets + 1, 0);
  for (std::size_t p = 0; p < n; ++p) ++start[key(p) + 1];
  for (std::size_t b = 0; b < kBuckets; ++b) start[b + 1] += start[b];

  std::vector<Group> groups;
  for (std::size_t b = 0; b < kBuckets; ++b) {
    if (start[b + 1] - start[b] > 1) groups.emplace_back(start[b], start[b + 1] - 1);
  }
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t b = key(p);
    rank[p] = start[b + 1] - 1;
  }
  for (std::size_t p = 0; p < n; ++p) sa[start[key(p)]++] = static_cast<std::uint32_t>(p);
  return groups;
}

// `successor(p, h)` returns the position h characters after p, or
// kNoSuccessor when there is none (which sorts first).
template <class SuccessorFn>
void refine(std::vector<std::uint32_t>& sa, std::vector<std::uint32_t>& rank, std::vector<Group> groups,
            std::uint64_t h, std::uint64_t limit, SuccessorFn successor) {
  std::vector<std::uint64_t> scratch;
  std::vector<Group> next;
  for (; !groups.empty() && h < limit; h *= 2) {
    next.clear();
    for (const auto& [lo, hi] : groups) {
      const std::size_t size = static_cast<std::size_t>(hi - lo) + 1;
      scratch.resize(size);
      for (std::size_t i = 0; i < size; ++i) {
        const std::uint32_t p = sa[lo + i];
        const std::uint32_t q = successor(p, h);
        const std::uint64_t key = q == kNoSuccessor ? 0 : std::uint64_t{rank[q]} + 1;
        scratch[i] = (key << 32) | p;
      }
      std::sort(scratch.begin(), scratch.end());

      std::size_t run = 0;
      for (std::size_t i = 0; i < size; ++i) {
        sa[lo + i] = static_cast<std::uint32_t>(scratch[i]);
        const bool run_ends = i + 1 == size || (scratch[i + 1] >> 32) != (scratch[i] >> 32);
        if (!run_ends) continue;
        const auto end_slot = static_cast<std::uint32_t>(lo + i);
        for (std::size_t j = run; j <= i; ++j) rank[static_cast<std::uint32_t>(scratch[j])] = end_slot;
        if (i > run) next.emplace_back(static_cast<std::uint32_t>(lo + run), end_slot);
        run = i + 1;
      }
    }
    groups.swap(next);
  }
  // Groups still open hold equal keys; they are already in position order.
}

std::vector<std::uint32_t> sort_by_doubling(const WordTable& table) {
  const std::size_t n = table.total_length();
  ByteView text = table.text();
  std::vector<std::uint32_t> sa(n);
  std::vector<std::uint32_t> rank(n);

  auto groups = bucket_by_key(n, sa, rank, [&](std::size_t p) {
    return std::size_t{text[p]} * 257 + text[table.advance(p, 1)] + 1;
  });

  // Expansions of words with lengths la, lb agree everywhere once they agree
  // on la + lb characters (la alone for two rotations of one word).
  std::uint64_t longest = 0, second = 0;
  for (std::size_t id = 0; id < table.word_count(); ++id) {
    const std::uint64_t len = table.word_length(id);
    if (len > longest) {
      second = longest;
      longest = len;
    } else if (len > second) {
      second = len;
    }
  }
  const std::uint64_t limit = table.word_count() >= 2 ? longest + second : longest;

  refine(sa, rank, std::move(groups), 2, limit, [&](std::uint32_t p, std::uint64_t h) {
    return static_cast<std::uint32_t>(table.advance(p, h));
  });
  return sa;
}

std::vector<std::uint32_t> sort_by_comparison(const WordTable& table, OrderKind kind) {
  const std::size_t n = table.total_length();
  std::vector<std::uint32_t> positions(n);
  for (std::size_t p = 0; p < n; ++p) positions[p] = static_cast<std::uint32_t>(p);

  // Word lookups are hoisted out of the comparator.
  struct Handle {
    const Byte* word;
    std::uint32_t length;
    std::uint32_t offset;
    std::uint32_t position;
  };
  std::vector<Handle> handles(n);
  for (std::size_t id = 0; id < table.word_count(); ++id) {
    const std::uint32_t start = table.word_start(id);
    const std::uint32_t len = table.word_length(id);
    for (std::uint32_t o = 0; o < len; ++o) {
      handles[start + o] = Handle{table.text().data() + start, len, o, start + o};
    }
  }
  std::sort(handles.begin(), handles.end(), [kind](const Handle& a, const Handle& b) {
    const auto c = compare_rotations(ByteView(a.word, a.length), a.offset, ByteView(b.word, b.length), b.offset, kind);
    if (c != 0) return c < 0;
    return a.position < b.position;
  });
  for (std::size_t i = 0; i < n; ++i) positions[i] = handles[i].position;
  return positions;
}

std::vector<std::uint32_t> sort_single_word_by_suffix_array(const WordTable& table) {
  ByteView w = table.text();
  Bytes doubled(w.begin(), w.end());
  doubled.insert(doubled.end(), w.begin(), w.end());
  std::vector<std::uint32_t> sa = suffix_array(doubled);
  std::vector<std::uint32_t> out;
  out.reserve(w.size());
  for (std::uint32_t p : sa) {
    if (p < w.size()) out.push_back(p);
  }
  return out;
}

bool all_same_length(const WordTable& table) {
  for (std::size_t id = 1; id < table.word_count(); ++id) {
    if (table.word_length(id) != table.word_length(0)) return false;
  }
  return true;
}

}  // namespace

std::vector<std::uint32_t> sort_rotation_positions(const WordTable& table, OrderKind kind, SortEngine engine) {
  if (table.total_length() == 0) fail(Errc::empty_input, "no rotations to sort");

  if (engine == SortEngine::automatic) {
    if (kind == OrderKind::infinite_periodic) {
      engine = SortEngine::prefix_doubling;
    } else if (table.word_count() == 1 && is_primitive(table.text())) {
      engine = SortEngine::suffix_array;
    } else {
      engine = SortEngine::comparison;
    }
  }

  switch (engine) {
    case SortEngine::prefix_doubling:
      // Equal-length words compare the same way under both orders.
      if (kind != OrderKind::infinite_periodic && !all_same_length(table)) {
        fail(Errc::invalid_config, "prefix doubling sorts standard_lex only for equal-length words");
      }
      return sort_by_doubling(table);
    case SortEngine::comparison:
      return sort_by_comparison(table, kind);
    case SortEngine::suffix_array:
      if (table.word_count() != 1 || !is_primitive(table.text())) {
        fail(Errc::invalid_config, "suffix array engine needs a single primitive word");
      }
      return sort_single_word_by_suffix_array(table);
    case SortEngine::automatic:
      break;
  }
  fail(Errc::invalid_config, "unknown sort engine");
}

std::vector<Rotation> sort_all_rotations(const WordTable& table, OrderKind kind, SortEngine engine) {
  const auto positions = sort_rotation_positions(table, kind, engine);
  std::vector<Rotation> out;
  out.reserve(positions.size());
  for (std::uint32_t p : positions) out.push_back(table.rotation_at(p));
  return out;
}

std::vector<Rotation> sort_all_rotations(std::span<const Bytes> words, OrderKind kind) {
  return sort_all_rotations(WordTable::from_words(words), kind);
}

std::vector<std::uint32_t> suffix_array(ByteView s) {
  if (s.empty()) fail(Errc::empty_input, "empty string");
  check_total_length(s.size());
  const std::size_t n = s.size();
  std::vector<std::uint32_t> sa(n);
  std::vector<std::uint32_t> rank(n);
  auto groups = bucket_by_key(n, sa, rank, [&](std::size_t p) {
    return std::size_t{s[p]} * 257 + (p + 1 < n ? s[p + 1] + 1 : 0);
  });
  refine(sa, rank, std::move(groups), 2, std::numeric_limits<std::uint64_t>::max(),
         [n](std::uint32_t p, std::uint64_t h) {
           return p + h < n ? static_cast<std::uint32_t>(p + h) : kNoSuccessor;
         });
  return sa;
}

bool is_primitive(ByteView s) {
  if (s.empty()) fail(Errc::empty_input, "empty string");
  // smallest period from the KMP failure function
  const std::size_t n = s.size();
  std::vector<std::uint32_t> fail_fn(n, 0);
  for (std::size_t i = 1, k = 0; i < n; ++i) {
    while (k > 0 && s[i] != s[k]) k = fail_fn[k - 1];
    if (s[i] == s[k]) ++k;
    fail_fn[i] = static_cast<std::uint32_t>(k);
  }
  const std::size_t period = n - fail_fn[n - 1];
  return period == n || n % period != 0;
}

}  // namespace bjs
