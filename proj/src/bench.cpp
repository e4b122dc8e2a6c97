#include "bjs/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "bjs/error.hpp"

namespace bjs {

namespace fs = std::filesystem;

double ratio_percent(double compressed, double original) {
  return original > 0 ? compressed / original * 100.0 : 0.0;
}

double absolute_gain(double bytes_base, double bytes_candidate, double original) {
  return ratio_percent(bytes_base, original) - ratio_percent(bytes_candidate, original);
}

double relative_gain(double bytes_base, double bytes_candidate) {
  return bytes_base > 0 ? (bytes_base - bytes_candidate) / bytes_base * 100.0 : 0.0;
}

double BenchRecord::ratio(std::size_t config) const {
  if (degenerate()) return 0.0;
  return ratio_percent(static_cast<double>(compressed_bytes.at(config)), static_cast<double>(original_bytes));
}

double BenchRecord::absolute_gain() const {
  if (degenerate() || compressed_bytes.size() < 2) return 0.0;
  return bjs::absolute_gain(static_cast<double>(compressed_bytes[0]), static_cast<double>(compressed_bytes[1]),
                            static_cast<double>(original_bytes));
}

double BenchRecord::relative_gain() const {
  if (degenerate() || compressed_bytes.size() < 2) return 0.0;
  return bjs::relative_gain(static_cast<double>(compressed_bytes[0]), static_cast<double>(compressed_bytes[1]));
}

std::vector<fs::path> collect_files(std::span<const fs::path> paths) {
  std::vector<fs::path> out;
  for (const fs::path& p : paths) {
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      std::vector<fs::path> entries;
      for (const auto& e : fs::directory_iterator(p, ec)) {
        if (e.is_regular_file()) entries.push_back(e.path());
      }
      if (ec) fail(Errc::io, "cannot list " + p.string() + ": " + ec.message());
      std::sort(entries.begin(), entries.end());
      out.insert(out.end(), entries.begin(), entries.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

namespace {

Bytes read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io, "cannot read " + path.string());
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) fail(Errc::io, "error while reading " + path.string());
  return data;
}

}  // namespace

std::vector<BenchRecord> run_bench(std::span<const fs::path> files, std::span<const PipelineConfig> configs) {
  for (const auto& c : configs) c.validate();
  std::vector<BenchRecord> records;
  records.reserve(files.size());
  for (const fs::path& path : files) {
    const Bytes data = read_file(path);
    BenchRecord rec;
    rec.file = path.filename().string();
    rec.original_bytes = data.size();
    for (const PipelineConfig& cfg : configs) {
      const Bytes packed = compress(data, cfg);
      if (decompress(packed) != data) {
        fail(Errc::roundtrip_mismatch, "round-trip mismatch on " + path.string() + " under " + cfg.label());
      }
      rec.compressed_bytes.push_back(packed.size());
    }
    records.push_back(std::move(rec));
  }
  return records;
}

// ---------------------------------------------------------------------------
// Tables

namespace {

struct Row {
  std::string label;
  double size = 0;
  std::vector<double> bytes;
  std::vector<double> ratios;
  double gain_abs = 0;
  double gain_rel = 0;
};

Row row_of(const BenchRecord& r) {
  Row row;
  row.label = r.file;
  row.size = static_cast<double>(r.original_bytes);
  for (std::size_t i = 0; i < r.compressed_bytes.size(); ++i) {
    row.bytes.push_back(static_cast<double>(r.compressed_bytes[i]));
    row.ratios.push_back(r.ratio(i));
  }
  row.gain_abs = r.absolute_gain();
  row.gain_rel = r.relative_gain();
  return row;
}

Row total_of(std::span<const BenchRecord> records, std::size_t configs) {
  Row row;
  row.label = "Total";
  row.bytes.assign(configs, 0.0);
  for (const auto& r : records) {
    row.size += static_cast<double>(r.original_bytes);
    for (std::size_t i = 0; i < configs; ++i) row.bytes[i] += static_cast<double>(r.compressed_bytes[i]);
  }
  for (std::size_t i = 0; i < configs; ++i) row.ratios.push_back(ratio_percent(row.bytes[i], row.size));
  if (configs >= 2) {
    row.gain_abs = absolute_gain(row.bytes[0], row.bytes[1], row.size);
    row.gain_rel = relative_gain(row.bytes[0], row.bytes[1]);
  }
  return row;
}

// Mean of the two middle values for an even count.
double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

Row median_of(const std::vector<Row>& rows, std::size_t configs) {
  auto column = [&](auto get) {
    std::vector<double> v;
    v.reserve(rows.size());
    for (const Row& r : rows) v.push_back(get(r));
    return median(std::move(v));
  };
  Row row;
  row.label = "Median";
  row.size = column([](const Row& r) { return r.size; });
  for (std::size_t i = 0; i < configs; ++i) {
    row.bytes.push_back(column([i](const Row& r) { return r.bytes[i]; }));
    row.ratios.push_back(column([i](const Row& r) { return r.ratios[i]; }));
  }
  row.gain_abs = column([](const Row& r) { return r.gain_abs; });
  row.gain_rel = column([](const Row& r) { return r.gain_rel; });
  return row;
}

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Sizes are integral except for medians over an even count.
std::string count(double v) {
  char buf[64];
  if (v == std::floor(v)) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.1f", v);
  }
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string md_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += (c == '\n' || c == '\r') ? ' ' : c;
  }
  return out;
}

void csv_row(std::ostringstream& out, std::string_view kind, const Row& r, bool gains) {
  out << kind << ',' << csv_field(r.label) << ',' << count(r.size);
  for (std::size_t i = 0; i < r.bytes.size(); ++i) out << ',' << count(r.bytes[i]) << ',' << fixed2(r.ratios[i]);
  if (gains) out << ',' << fixed2(r.gain_abs) << ',' << fixed2(r.gain_rel);
  out << "\r\n";
}

void md_row(std::ostringstream& out, const std::string& label, const Row& r, bool gains) {
  out << "| " << label << " | " << count(r.size);
  for (std::size_t i = 0; i < r.bytes.size(); ++i) {
    out << " | " << count(r.bytes[i]) << " | " << fixed2(r.ratios[i]) << '%';
  }
  if (gains) out << " | " << fixed2(r.gain_abs) << "% | " << fixed2(r.gain_rel) << '%';
  out << " |\n";
}

}  // namespace

std::string render_table(std::span<const BenchRecord> records, std::span<const std::string> labels,
                         TableFormat format) {
  if (records.empty()) fail(Errc::empty_input, "no benchmark records");
  const std::size_t configs = labels.size();
  for (const auto& r : records) {
    if (r.compressed_bytes.size() != configs) {
      fail(Errc::out_of_range, "record " + r.file + " has " + std::to_string(r.compressed_bytes.size()) +
                                   " sizes for " + std::to_string(configs) + " configurations");
    }
  }
  const bool gains = configs >= 2;

  std::vector<Row> rows;
  rows.reserve(records.size());
  for (const auto& r : records) rows.push_back(row_of(r));
  const Row total = total_of(records, configs);
  const Row med = median_of(rows, configs);

  std::ostringstream out;
  if (format == TableFormat::csv) {
    out << "row,file,size";
    for (const auto& l : labels) out << ',' << csv_field(l + "_bytes") << ',' << csv_field(l + "_ratio");
    if (gains) out << ",gain_abs,gain_rel";
    out << "\r\n";
    for (const Row& r : rows) csv_row(out, "file", r, gains);
    csv_row(out, "total", total, gains);
    csv_row(out, "median", med, gains);
  } else {
    out << "| File | Size";
    for (const auto& l : labels) out << " | " << md_cell(l) << " bytes | " << md_cell(l) << " ratio";
    if (gains) out << " | Gain absolute | Gain relative";
    out << " |\n|:---|---:";
    for (std::size_t i = 0; i < configs; ++i) out << "|---:|---:";
    if (gains) out << "|---:|---:";
    out << "|\n";
    for (const Row& r : rows) md_row(out, md_cell(r.label), r, gains);
    md_row(out, "*Total*", total, gains);
    md_row(out, "*Median*", med, gains);
  }
  return out.str();
}

namespace {

// RFC 4180 records; accepts CRLF or LF line ends.
std::vector<std::vector<std::string>> split_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        fields.push_back(std::move(field));
        rows.push_back(std::move(fields));
      }
      fields.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) fail(Errc::corrupt_stream, "unterminated quoted CSV field");
  if (any || !field.empty()) {
    fields.push_back(std::move(field));
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::uint64_t parse_count(const std::string& s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) fail(Errc::corrupt_stream, "not a byte count: '" + s + "'");
  return v;
}

}  // namespace

ParsedTable parse_csv(std::string_view text) {
  const auto rows = split_csv(text);
  if (rows.empty()) fail(Errc::empty_input, "empty CSV");
  const auto& head = rows.front();
  if (head.size() < 3 || head[0] != "row" || head[1] != "file" || head[2] != "size") {
    fail(Errc::corrupt_stream, "unrecognised CSV header");
  }
  ParsedTable table;
  const std::string suffix = "_bytes";
  for (std::size_t i = 3; i + 1 < head.size(); i += 2) {
    const std::string& h = head[i];
    if (h.size() <= suffix.size() || h.compare(h.size() - suffix.size(), suffix.size(), suffix) != 0) break;
    table.labels.push_back(h.substr(0, h.size() - suffix.size()));
  }
  const std::size_t configs = table.labels.size();
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r];
    if (f.size() != head.size()) fail(Errc::corrupt_stream, "CSV row " + std::to_string(r) + " has wrong arity");
    if (f[0] != "file") continue;
    BenchRecord rec;
    rec.file = f[1];
    rec.original_bytes = parse_count(f[2]);
    for (std::size_t i = 0; i < configs; ++i) rec.compressed_bytes.push_back(parse_count(f[3 + 2 * i]));
    table.records.push_back(std::move(rec));
  }
  return table;
}

}  // namespace bjs
