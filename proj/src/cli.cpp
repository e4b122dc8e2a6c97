#include "bjs/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>

#include "bjs/bench.hpp"
#include "bjs/error.hpp"
#include "bjs/pipeline.hpp"
#include "bjs/transform.hpp"

namespace bjs::cli {

namespace {

struct Options {
  std::string transform = "bwts";
  std::string order = "periodic";
  std::string output;
  std::string format = "md";
  std::optional<std::uint64_t> index;
  std::string input = "-";
  std::vector<std::string> bench_paths;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

TransformKind transform_of(const std::string& s) {
  if (s == "bwt") return TransformKind::bwt;
  if (s == "none") return TransformKind::none;
  return TransformKind::bwts;
}

OrderKind order_of(const std::string& s) {
  return s == "lex" ? OrderKind::standard_lex : OrderKind::infinite_periodic;
}

PipelineConfig config_of(const Options& o) {
  PipelineConfig c;
  c.transform = transform_of(o.transform);
  c.order = order_of(o.order);
  return c;
}

Bytes read_input(const std::string& path, std::istream& in) {
  if (path == "-") {
    return Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(Errc::io, "cannot read " + path);
  return Bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

void write_output(const std::string& path, ByteView data, std::ostream& out) {
  if (path.empty() || path == "-") {
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    out.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) fail(Errc::io, "cannot write " + path);
  f.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!f) fail(Errc::io, "error while writing " + path);
}

void add_input(CLI::App* cmd, Options& o) {
  cmd->add_option("input", o.input, "Input file, or - for standard input")->capture_default_str();
}

void add_output(CLI::App* cmd, Options& o) {
  cmd->add_option("-o,--output", o.output, "Output file (default: standard output)");
}

void add_transform(CLI::App* cmd, Options& o) {
  cmd->add_option("--transform", o.transform, "Block transform")
      ->check(CLI::IsMember({"bwts", "bwt", "none"}))
      ->capture_default_str();
}

void add_order(CLI::App* cmd, Options& o) {
  cmd->add_option("--order", o.order, "Rotation order for bwts")
      ->check(CLI::IsMember({"periodic", "lex"}))
      ->capture_default_str();
}

int cmd_compress(const Options& o, std::istream& in, std::ostream& out) {
  const Bytes data = read_input(o.input, in);
  write_output(o.output, compress(data, config_of(o)), out);
  return kExitOk;
}

int cmd_decompress(const Options& o, std::istream& in, std::ostream& out) {
  const Bytes data = read_input(o.input, in);
  write_output(o.output, decompress(data), out);
  return kExitOk;
}

int cmd_transform(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const Bytes data = read_input(o.input, in);
  switch (transform_of(o.transform)) {
    case TransformKind::none:
      write_output(o.output, data, out);
      break;
    case TransformKind::bwt: {
      const BwtResult r = bwt_forward(data);
      err << "rotation index: " << r.index << '\n';
      write_output(o.output, r.transform, out);
      break;
    }
    case TransformKind::bwts:
      write_output(o.output, bwts_forward(data, order_of(o.order)), out);
      break;
  }
  return kExitOk;
}

int cmd_untransform(const Options& o, std::istream& in, std::ostream& out) {
  const Bytes data = read_input(o.input, in);
  switch (transform_of(o.transform)) {
    case TransformKind::none:
      write_output(o.output, data, out);
      break;
    case TransformKind::bwt:
      if (!o.index) throw UsageError("untransform --transform bwt requires --index");
      write_output(o.output, bwt_inverse_indexed(data, static_cast<std::size_t>(*o.index)), out);
      break;
    case TransformKind::bwts:
      write_output(o.output, bwts_inverse(data), out);
      break;
  }
  return kExitOk;
}

int cmd_verify(const Options& o, std::istream& in, std::ostream& err) {
  const Bytes data = read_input(o.input, in);
  const PipelineConfig cfg = config_of(o);
  const Bytes packed = compress(data, cfg);
  if (decompress(packed) != data) {
    err << "verify: round-trip mismatch under " << cfg.label() << '\n';
    return kExitVerifyMismatch;
  }
  err << "verify: ok, " << data.size() << " -> " << packed.size() << " bytes (" << cfg.label() << ")\n";
  return kExitOk;
}

int cmd_bench(const Options& o, std::ostream& out) {
  std::vector<std::filesystem::path> paths(o.bench_paths.begin(), o.bench_paths.end());
  const auto files = collect_files(paths);
  if (files.empty()) throw UsageError("bench: no input files");
  PipelineConfig bwt;
  bwt.transform = TransformKind::bwt;
  PipelineConfig bwts;
  bwts.transform = TransformKind::bwts;
  bwts.order = order_of(o.order);
  const std::vector<PipelineConfig> configs{bwt, bwts};
  const auto records = run_bench(files, configs);
  const std::vector<std::string> labels{bwt.label(), bwts.label()};
  const std::string table =
      render_table(records, labels, o.format == "csv" ? TableFormat::csv : TableFormat::markdown);
  write_output(o.output, ByteView(reinterpret_cast<const Byte*>(table.data()), table.size()), out);
  return kExitOk;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::invalid_config:
      return kExitUsage;
    case Errc::roundtrip_mismatch:
      return kExitVerifyMismatch;
    default:
      return kExitData;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Burrows-Wheeler and bijective string-sorting transforms with a block-sorting compressor", "bjs"};
  app.require_subcommand(1);

  auto* compress_cmd = app.add_subcommand("compress", "Compress into a BJS1 container");
  add_input(compress_cmd, o);
  add_output(compress_cmd, o);
  add_transform(compress_cmd, o);
  add_order(compress_cmd, o);

  auto* decompress_cmd = app.add_subcommand("decompress", "Restore the original bytes from a container");
  add_input(decompress_cmd, o);
  add_output(decompress_cmd, o);
  // accepted for symmetry; the container header decides
  add_transform(decompress_cmd, o);
  add_order(decompress_cmd, o);

  auto* transform_cmd = app.add_subcommand("transform", "Emit the raw transform of the input");
  add_input(transform_cmd, o);
  add_output(transform_cmd, o);
  add_transform(transform_cmd, o);
  add_order(transform_cmd, o);

  auto* untransform_cmd = app.add_subcommand("untransform", "Invert a raw transform");
  add_input(untransform_cmd, o);
  add_output(untransform_cmd, o);
  add_transform(untransform_cmd, o);
  untransform_cmd->add_option("--index", o.index, "Rotation index printed by transform --transform bwt");

  auto* verify_cmd = app.add_subcommand("verify", "Compress and decompress in memory and compare");
  add_input(verify_cmd, o);
  add_transform(verify_cmd, o);
  add_order(verify_cmd, o);

  auto* bench_cmd = app.add_subcommand("bench", "Compare bwt and bwts compression over files or directories");
  bench_cmd->add_option("paths", o.bench_paths, "Files or directories")->required();
  bench_cmd->add_option("--format", o.format, "Table format")
      ->check(CLI::IsMember({"csv", "md"}))
      ->capture_default_str();
  add_output(bench_cmd, o);
  add_order(bench_cmd, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "bjs: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (compress_cmd->parsed()) return cmd_compress(o, in, out);
    if (decompress_cmd->parsed()) return cmd_decompress(o, in, out);
    if (transform_cmd->parsed()) return cmd_transform(o, in, out, err);
    if (untransform_cmd->parsed()) return cmd_untransform(o, in, out);
    if (verify_cmd->parsed()) return cmd_verify(o, in, err);
    if (bench_cmd->parsed()) return cmd_bench(o, out);
  } catch (const UsageError& e) {
    err << "bjs: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "bjs: " << errc_name(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kExitUsage;
}

}  // namespace bjs::cli
