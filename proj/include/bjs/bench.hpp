#pragma once

// Corpus benchmark: compress every file under each configuration, verify the
// round trip, and tabulate sizes, ratios and the gain of the second
// configuration over the first, with Total and Median rows.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bjs/pipeline.hpp"

namespace bjs {

struct BenchRecord {
  std::string file;
  std::uint64_t original_bytes = 0;
  std::vector<std::uint64_t> compressed_bytes;  // one entry per configuration

  // Empty input; ratios and gains are reported as 0.
  bool degenerate() const noexcept { return original_bytes == 0; }

  // compressed / original * 100.
  double ratio(std::size_t config) const;

  // Gains of configuration 1 over configuration 0. Absolute gain is in
  // percentage points of ratio, relative gain in percent of configuration 0's
  // size.
  double absolute_gain() const;
  double relative_gain() const;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

// Percentages from raw sizes, shared by records and summary rows.
double ratio_percent(double compressed, double original);
double absolute_gain(double bytes_base, double bytes_candidate, double original);
double relative_gain(double bytes_base, double bytes_candidate);

// Regular files of each directory (sorted by name, not recursive) and every
// plain file path, in argument order.
std::vector<std::filesystem::path> collect_files(std::span<const std::filesystem::path> paths);

// Throws Error(io) for unreadable files and Error(roundtrip_mismatch) naming
// the file and configuration when decompress(compress(x)) != x.
std::vector<BenchRecord> run_bench(std::span<const std::filesystem::path> files,
                                   std::span<const PipelineConfig> configs);

enum class TableFormat { csv, markdown };

// One data row per record in input order, then Total and Median rows.
// `labels` name the configurations. Throws Error(empty_input) for no records.
std::string render_table(std::span<const BenchRecord> records, std::span<const std::string> labels,
                         TableFormat format);

struct ParsedTable {
  std::vector<std::string> labels;
  std::vector<BenchRecord> records;
};

// Reads back the data rows of a CSV table produced by render_table.
ParsedTable parse_csv(std::string_view text);

}  // namespace bjs
