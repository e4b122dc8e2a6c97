#pragma once

// Five-stage compression pipeline and its container format:
//
//   RLE1 -> transform (bwts | bwt | none) -> MTF -> RLE2 -> arithmetic coder
//
// Container layout, all integers little-endian:
//
//   offset  size  field
//   0       4     magic "BJS1"
//   4       1     version (1)
//   5       1     transform id: 0 none, 1 bwt, 2 bwts
//   6       1     order id: 0 standard_lex, 1 infinite_periodic
//   7       1     stage flags (see Stage)
//   8       8     original length
//   16      8     rotation index of the post-RLE1 block, bwt only
//   16|24   ...   payload

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "bjs/bytes.hpp"
#include "bjs/rotation.hpp"

namespace bjs {

enum class TransformKind : std::uint8_t { none = 0, bwt = 1, bwts = 2 };

std::string_view transform_name(TransformKind kind) noexcept;

namespace stage {
inline constexpr std::uint8_t rle1 = 0x01;
inline constexpr std::uint8_t mtf = 0x02;
inline constexpr std::uint8_t rle2 = 0x04;
inline constexpr std::uint8_t entropy = 0x08;
inline constexpr std::uint8_t all = rle1 | mtf | rle2 | entropy;
}  // namespace stage

struct PipelineConfig {
  TransformKind transform = TransformKind::bwts;
  OrderKind order = OrderKind::infinite_periodic;
  std::uint8_t stages = stage::all;

  // Throws Error(invalid_config) for unknown stage bits and for bwts under
  // standard_lex, whose image cannot be inverted.
  void validate() const;

  // Short name used in reports: "bwts", "bwt", "none", with "-lex" appended
  // for bwts under standard_lex and "-s<flags>" when stages are not all on.
  std::string label() const;
};

struct ContainerHeader {
  static constexpr std::array<char, 4> kMagic{'B', 'J', 'S', '1'};
  static constexpr std::uint8_t kVersion = 1;
  static constexpr std::size_t kBaseSize = 16;
  static constexpr std::size_t kIndexSize = 8;

  TransformKind transform = TransformKind::bwts;
  OrderKind order = OrderKind::infinite_periodic;
  std::uint8_t stage_flags = stage::all;
  std::uint64_t original_length = 0;
  // Present exactly when transform == bwt.
  std::optional<std::uint64_t> rotation_index;

  std::size_t size() const noexcept { return kBaseSize + (transform == TransformKind::bwt ? kIndexSize : 0); }

  Bytes serialize() const;

  // Errors: bad_magic, bad_version, truncated, corrupt_stream (unknown ids or
  // flag bits).
  static ContainerHeader parse(ByteView data);

  friend bool operator==(const ContainerHeader&, const ContainerHeader&) = default;
};

Bytes compress(ByteView data, const PipelineConfig& config = {});

// Inverse of compress; transform, order and stages come from the header.
Bytes decompress(ByteView container);

}  // namespace bjs
