#include "bjs/transform.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>

#include "bjs/error.hpp"

namespace bjs {

namespace {

void require_non_empty(ByteView s) {
  if (s.empty()) fail(Errc::empty_input, "empty string");
}

void require_matching(ByteView eta, const Theta& theta) {
  if (theta.size() != eta.size()) {
    fail(Errc::out_of_range, "permutation of size " + std::to_string(theta.size()) + " for a string of length " +
                                 std::to_string(eta.size()));
  }
}

}  // namespace

bool Theta::is_permutation() const {
  std::vector<bool> hit(map_.size(), false);
  for (std::uint32_t v : map_) {
    if (v >= map_.size() || hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

std::vector<std::size_t> Theta::cycle_lengths() const {
  std::vector<std::size_t> out;
  std::vector<bool> seen(map_.size(), false);
  for (std::size_t j = 0; j < map_.size(); ++j) {
    if (seen[j]) continue;
    std::size_t len = 0;
    for (std::size_t k = j; !seen[k]; k = map_[k]) {
      seen[k] = true;
      ++len;
    }
    out.push_back(len);
  }
  return out;
}

RotationList cyclic_rotations(ByteView s) {
  require_non_empty(s);
  RotationList list{WordTable::single(s), {}};
  const auto n = static_cast<std::uint32_t>(s.size());
  list.rotations.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) list.rotations.push_back(Rotation{0, i, n});
  return list;
}

Bytes last_column(const RotationList& list, OrderKind order) {
  if (list.rotations.empty()) fail(Errc::empty_input, "no rotations");
  std::vector<Rotation> sorted = list.rotations;
  std::sort(sorted.begin(), sorted.end(), [&](const Rotation& a, const Rotation& b) {
    const auto c = compare_rotations(list.words, a, b, order);
    if (c != 0) return c < 0;
    if (a.word_id != b.word_id) return a.word_id < b.word_id;
    return a.offset < b.offset;
  });
  Bytes out;
  out.reserve(sorted.size());
  for (const Rotation& r : sorted) out.push_back(list.words.char_at(r, -1));
  return out;
}

BwtResult bwt_forward(ByteView s) {
  require_non_empty(s);
  const WordTable table = WordTable::single(s);
  // Rotations of one word all have the same length, so both orders agree.
  const auto sorted = sort_rotation_positions(table, OrderKind::infinite_periodic, SortEngine::prefix_doubling);
  const std::size_t n = s.size();
  BwtResult result;
  result.transform.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t p = sorted[i];
    result.transform[i] = s[p == 0 ? n - 1 : p - 1];
    if (p == 0) result.index = i;
  }
  return result;
}

Theta match_permutation(ByteView eta) {
  std::array<std::uint32_t, 256> counts{};
  for (Byte c : eta) ++counts[c];

  std::array<std::uint32_t, 256> before{};
  for (std::size_t c = 1; c < 256; ++c) before[c] = before[c - 1] + counts[c - 1];

  std::array<std::uint32_t, 256> seen{};
  std::vector<std::uint32_t> theta(eta.size());
  for (std::size_t i = 0; i < eta.size(); ++i) {
    const Byte c = eta[i];
    theta[i] = before[c] + seen[c];
    ++seen[c];
  }
  return Theta(std::move(theta));
}

Bytes thread_from(ByteView eta, const Theta& theta, std::size_t start) {
  require_matching(eta, theta);
  const std::size_t n = eta.size();
  if (start >= n) {
    fail(Errc::out_of_range, "start " + std::to_string(start) + " outside [0, " + std::to_string(n) + ")");
  }
  Bytes out(n);
  std::size_t k = start;
  for (std::size_t i = n; i-- > 0;) {
    out[i] = eta[k];
    k = theta[k];
    if (k >= n) fail(Errc::out_of_range, "theta is not a permutation");
  }
  return out;
}

Bytes bwt_inverse(ByteView eta) {
  require_non_empty(eta);
  return thread_from(eta, match_permutation(eta), 0);
}

Bytes bwt_inverse_indexed(ByteView eta, std::size_t index) {
  require_non_empty(eta);
  return thread_from(eta, match_permutation(eta), index);
}

LyndonFactorization lyndon_factorize(ByteView s) {
  require_non_empty(s);
  const std::size_t n = s.size();
  if (n > std::numeric_limits<std::uint32_t>::max() - 1) fail(Errc::out_of_range, "input too long");
  std::vector<std::uint32_t> bounds{0};
  std::size_t i = 0;
  while (i < n) {
    // s[i..j) is a prefix of (s[i..i+period))^*, period = j - k
    std::size_t j = i + 1;
    std::size_t k = i;
    while (j < n && s[k] <= s[j]) {
      k = s[k] < s[j] ? i : k + 1;
      ++j;
    }
    const std::size_t period = j - k;
    while (i <= k) {
      i += period;
      bounds.push_back(static_cast<std::uint32_t>(i));
    }
  }
  return LyndonFactorization(std::move(bounds));
}

Bytes bwts_forward(ByteView s, OrderKind order) {
  require_non_empty(s);
  const WordTable table(s, lyndon_factorize(s).take_boundaries());
  const auto sorted = sort_rotation_positions(table, order);
  Bytes out(s.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) out[i] = table.last_char_at(sorted[i]);
  return out;
}

Bytes multi_thread(ByteView eta, const Theta& theta) {
  require_matching(eta, theta);
  const std::size_t n = eta.size();
  Bytes out(n);
  std::vector<bool> visited(n, false);
  std::size_t i = n;
  for (std::size_t j = 0; j < n; ++j) {
    if (visited[j]) continue;
    std::size_t k = j;
    do {
      out[--i] = eta[k];
      visited[k] = true;
      k = theta[k];
      if (k >= n) fail(Errc::out_of_range, "theta is not a permutation");
    } while (!visited[k]);
  }
  return out;
}

Bytes bwts_inverse(ByteView eta) {
  require_non_empty(eta);
  return multi_thread(eta, match_permutation(eta));
}

}  // namespace bjs
