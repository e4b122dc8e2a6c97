#include "bjs/pipeline.hpp"

#include <algorithm>
#include <cstring>
#include <limits>

#include "bjs/arith.hpp"
#include "bjs/codec.hpp"
#include "bjs/error.hpp"
#include "bjs/transform.hpp"

namespace bjs {

std::string_view transform_name(TransformKind kind) noexcept {
  switch (kind) {
    case TransformKind::none:
      return "none";
    case TransformKind::bwt:
      return "bwt";
    case TransformKind::bwts:
      return "bwts";
  }
  return "unknown";
}

void PipelineConfig::validate() const {
  if ((stages & ~stage::all) != 0) fail(Errc::invalid_config, "unknown stage flag bits");
  if (transform == TransformKind::bwts && order == OrderKind::standard_lex) {
    fail(Errc::invalid_config, "bwts under standard_lex order is not invertible");
  }
}

std::string PipelineConfig::label() const {
  std::string s(transform_name(transform));
  if (transform == TransformKind::bwts && order == OrderKind::standard_lex) s += "-lex";
  if (stages != stage::all) s += "-s" + std::to_string(stages);
  return s;
}

// ---------------------------------------------------------------------------
// Header

namespace {

void put_le64(Bytes& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<Byte>(v >> (8 * i)));
}

std::uint64_t get_le64(ByteView in) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | in[static_cast<std::size_t>(i)];
  return v;
}

}  // namespace

Bytes ContainerHeader::serialize() const {
  Bytes out;
  out.reserve(size());
  out.insert(out.end(), kMagic.begin(), kMagic.end());
  out.push_back(kVersion);
  out.push_back(static_cast<Byte>(transform));
  out.push_back(static_cast<Byte>(order));
  out.push_back(stage_flags);
  put_le64(out, original_length);
  if (transform == TransformKind::bwt) put_le64(out, rotation_index.value_or(0));
  return out;
}

ContainerHeader ContainerHeader::parse(ByteView data) {
  const std::size_t magic_bytes = std::min(data.size(), kMagic.size());
  if (!std::equal(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(magic_bytes), kMagic.begin())) {
    fail(Errc::bad_magic, "bad magic");
  }
  if (data.size() < kBaseSize) fail(Errc::truncated, "truncated header");
  if (data[4] != kVersion) fail(Errc::bad_version, "unsupported container version " + std::to_string(data[4]));
  if (data[5] > static_cast<Byte>(TransformKind::bwts)) fail(Errc::corrupt_stream, "unknown transform id");
  if (data[6] > static_cast<Byte>(OrderKind::infinite_periodic)) fail(Errc::corrupt_stream, "unknown order id");
  if ((data[7] & ~stage::all) != 0) fail(Errc::corrupt_stream, "unknown stage flags");

  ContainerHeader h;
  h.transform = static_cast<TransformKind>(data[5]);
  h.order = static_cast<OrderKind>(data[6]);
  h.stage_flags = data[7];
  h.original_length = get_le64(data.subspan(8, 8));
  if (h.transform == TransformKind::bwt) {
    if (data.size() < kBaseSize + kIndexSize) fail(Errc::truncated, "truncated header");
    h.rotation_index = get_le64(data.subspan(kBaseSize, kIndexSize));
  }
  return h;
}

// ---------------------------------------------------------------------------
// Pipeline

Bytes compress(ByteView data, const PipelineConfig& config) {
  config.validate();

  ContainerHeader header;
  header.transform = config.transform;
  header.order = config.order;
  header.stage_flags = config.stages;
  header.original_length = data.size();

  Bytes block = (config.stages & stage::rle1) ? rle_encode(data) : Bytes(data.begin(), data.end());
  switch (config.transform) {
    case TransformKind::none:
      break;
    case TransformKind::bwt: {
      header.rotation_index = 0;
      if (!block.empty()) {
        BwtResult r = bwt_forward(block);
        block = std::move(r.transform);
        header.rotation_index = r.index;
      }
      break;
    }
    case TransformKind::bwts:
      if (!block.empty()) block = bwts_forward(block, config.order);
      break;
  }
  if (config.stages & stage::mtf) block = mtf_encode(block);
  if (config.stages & stage::rle2) block = rle_encode(block);
  if (config.stages & stage::entropy) block = ac_encode(block);

  Bytes out = header.serialize();
  out.insert(out.end(), block.begin(), block.end());
  return out;
}

Bytes decompress(ByteView container) {
  const ContainerHeader header = ContainerHeader::parse(container);
  ByteView payload = container.subspan(header.size());
  if (header.transform == TransformKind::bwts && header.order == OrderKind::standard_lex) {
    fail(Errc::invalid_config, "bwts under standard_lex order is not invertible");
  }

  // Every stage keeps or grows the length by at most 4/3, so no intermediate
  // block of a genuine container is longer than this.
  const std::uint64_t n = header.original_length;
  const std::uint64_t cap64 = n > std::numeric_limits<std::uint64_t>::max() / 4 ? n : 2 * n + 64;
  const std::size_t cap = static_cast<std::size_t>(std::min<std::uint64_t>(cap64, std::numeric_limits<std::size_t>::max()));

  Bytes block = (header.stage_flags & stage::entropy) ? ac_decode(payload, std::nullopt, cap)
                                                       : Bytes(payload.begin(), payload.end());
  if (header.stage_flags & stage::rle2) block = rle_decode(block);
  if (header.stage_flags & stage::mtf) block = mtf_decode(block);
  if (block.size() > cap) fail(Errc::length_mismatch, "payload longer than the original length allows");

  switch (header.transform) {
    case TransformKind::none:
      break;
    case TransformKind::bwt:
      if (!block.empty()) {
        const std::uint64_t index = header.rotation_index.value_or(0);
        if (index >= block.size()) fail(Errc::corrupt_stream, "rotation index outside the block");
        block = bwt_inverse_indexed(block, static_cast<std::size_t>(index));
      }
      break;
    case TransformKind::bwts:
      if (!block.empty()) block = bwts_inverse(block);
      break;
  }
  if (header.stage_flags & stage::rle1) block = rle_decode(block);

  if (block.size() != n) {
    fail(Errc::length_mismatch, "decoded " + std::to_string(block.size()) + " bytes, header says " + std::to_string(n));
  }
  return block;
}

}  // namespace bjs
