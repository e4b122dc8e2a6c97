// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.
//
//   acceptance [--only N]... [--corpus PATH]... [--max-mib M]

#include <CLI11.hpp>
#include <malloc.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <new>
#include <random>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "bjs/arith.hpp"
#include "bjs/bench.hpp"
#include "bjs/codec.hpp"
#include "bjs/error.hpp"
#include "bjs/pipeline.hpp"
#include "bjs/transform.hpp"
#include "oracle.hpp"

// ---------------------------------------------------------------------------
// Heap accounting for the memory criterion. Every global new/delete goes
// through malloc; usable sizes are summed so the peak can be read back.

namespace heap {

std::atomic<std::size_t> current{0};
std::atomic<std::size_t> peak{0};

void note_alloc(void* p) {
  const std::size_t now = current.fetch_add(malloc_usable_size(p)) + malloc_usable_size(p);
  std::size_t seen = peak.load();
  while (now > seen && !peak.compare_exchange_weak(seen, now)) {
  }
}

void note_free(void* p) {
  if (p != nullptr) current.fetch_sub(malloc_usable_size(p));
}

void* allocate(std::size_t n) {
  void* p = std::malloc(n == 0 ? 1 : n);
  if (p == nullptr) throw std::bad_alloc();
  note_alloc(p);
  return p;
}

void release(void* p) noexcept {
  note_free(p);
  std::free(p);
}

// Resets the peak to the current level and returns that level.
std::size_t mark() {
  const std::size_t now = current.load();
  peak.store(now);
  return now;
}

}  // namespace heap

void* operator new(std::size_t n) { return heap::allocate(n); }
void* operator new[](std::size_t n) { return heap::allocate(n); }
void* operator new(std::size_t n, const std::nothrow_t&) noexcept {
  try {
    return heap::allocate(n);
  } catch (...) {
    return nullptr;
  }
}
void* operator new[](std::size_t n, const std::nothrow_t&) noexcept {
  try {
    return heap::allocate(n);
  } catch (...) {
    return nullptr;
  }
}
void operator delete(void* p) noexcept { heap::release(p); }
void operator delete[](void* p) noexcept { heap::release(p); }
void operator delete(void* p, std::size_t) noexcept { heap::release(p); }
void operator delete[](void* p, std::size_t) noexcept { heap::release(p); }

// ---------------------------------------------------------------------------

namespace {

using namespace bjs;
using Clock = std::chrono::steady_clock;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

ByteView view(const std::string& s) { return ByteView(reinterpret_cast<const Byte*>(s.data()), s.size()); }

std::string str(const Bytes& b) { return to_string(b); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Mixed-entropy generator: uniform bytes, small alphabets, long runs,
// powers of short words and word-like text.
Bytes mixed_bytes(std::mt19937_64& rng, std::size_t len) {
  Bytes b(len);
  switch (rng() % 5) {
    case 0:
      for (auto& c : b) c = static_cast<Byte>(rng());
      break;
    case 1: {
      const int sigma = 2 + static_cast<int>(rng() % 3);
      for (auto& c : b) c = static_cast<Byte>('a' + rng() % sigma);
      break;
    }
    case 2:
      for (std::size_t i = 0; i < len; ++i) {
        b[i] = i > 0 && rng() % 20 != 0 ? b[i - 1] : static_cast<Byte>(rng() % 6);
      }
      break;
    case 3: {
      const std::size_t period = 1 + rng() % 7;
      Bytes unit(period);
      for (auto& c : unit) c = static_cast<Byte>('a' + rng() % 3);
      for (std::size_t i = 0; i < len; ++i) b[i] = unit[i % period];
      if (rng() % 2 == 0) b[rng() % len] = static_cast<Byte>('a' + rng() % 3);
      break;
    }
    default: {
      static const char* words[] = {"the ", "of ", "and ", "a ", "to ", "in ", "is ", "you ", "that ", "it ",
                                    "he ", "was ", "for ", "on ", "are ", "as ", "with ", "his ", "they ", "I\n"};
      std::size_t i = 0;
      while (i < len) {
        for (const char* w = words[rng() % 20]; *w != '\0' && i < len; ++w) b[i++] = static_cast<Byte>(*w);
      }
      break;
    }
  }
  return b;
}

// ---------------------------------------------------------------------------

Outcome bijectivity() {
  const auto t0 = Clock::now();
  std::size_t strings = 0, violations = 0;
  std::string first;
  for (std::size_t len = 1; len <= 12; ++len) {
    std::unordered_set<std::string> images;
    oracle::for_each_string("ab", len, [&](const std::string& s) {
      ++strings;
      const std::string eta = str(bwts_forward(view(s)));
      const bool in_class = eta.size() == len && eta.find_first_not_of("ab") == std::string::npos;
      const bool back = str(bwts_inverse(view(eta))) == s;
      const bool forth = str(bwts_forward(bwts_inverse(view(s)))) == s;
      if (!images.insert(eta).second || !in_class || !back || !forth) {
        if (++violations == 1) first = s;
      }
    });
    if (images.size() != (std::size_t{1} << len)) violations += (std::size_t{1} << len) - images.size();
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = strings == 8190 && violations == 0 && secs < 10.0;
  o.detail = std::to_string(strings) + " strings, " + std::to_string(violations) + " violations" +
             (first.empty() ? "" : " (first: " + first + ")") + ", " + fmt("%.2f", secs) + " s (limit 10 s)";
  return o;
}

Outcome roundtrip_fuzz() {
  std::mt19937_64 rng(20240601);
  std::size_t periodic_bad = 0, lex_bad = 0;
  constexpr std::size_t kCases = 10000;
  for (std::size_t i = 0; i < kCases; ++i) {
    const Bytes s = mixed_bytes(rng, 1 + rng() % 4096);
    if (bwts_inverse(bwts_forward(s, OrderKind::infinite_periodic)) != s) ++periodic_bad;
    if (bwts_inverse(bwts_forward(s, OrderKind::standard_lex)) != s) ++lex_bad;
  }
  Outcome o;
  o.pass = periodic_bad == 0 && lex_bad == 0;
  o.detail = "infinite_periodic " + std::to_string(periodic_bad) + "/" + std::to_string(kCases) +
             " violations; standard_lex " + std::to_string(lex_bad) + "/" + std::to_string(kCases) + " violations";
  if (lex_bad != 0) {
    o.detail += " (the standard_lex S-transform is not injective: " + str(bwts_forward(to_bytes("abb"), OrderKind::standard_lex)) +
                " = T(abb) = T(bab), so no inverse exists)";
  }
  return o;
}

Outcome phrase() {
  const std::string text = "now is the time for the truly nice people to come to the party";
  const std::string printed_bwt = "oewyeeosreeeepi mhchlmhp tttnt puio yttcefn  ooati       rrolt";
  const std::string printed_s = "yoeyeeosreeeepi mhchlmhp tttnt puio wttcefn  ooati       rrotl";

  const std::string oracle_bwt = oracle::bwt(text).first;
  const std::string oracle_s = oracle::bwts(text, oracle::Order::periodic);
  const std::string got_bwt = str(bwt_forward(view(text)).transform);
  const std::string got_s = str(bwts_forward(view(text)));

  std::size_t differ = 0;
  for (std::size_t i = 0; i < got_bwt.size() && i < got_s.size(); ++i) differ += got_bwt[i] != got_s[i];

  const bool oracle_ok = got_bwt == oracle_bwt && got_s == oracle_s;
  const bool printed_ok = oracle_bwt == printed_bwt && oracle_s == printed_s;
  Outcome o;
  o.pass = oracle_ok && printed_ok && differ == 6 && str(bwts_inverse(view(got_s))) == text;
  o.detail = std::string("library vs oracle ") + (oracle_ok ? "equal" : "DIFFER") + ", oracle vs printed " +
             (printed_ok ? "equal" : "DIFFER") + ", " + std::to_string(differ) + " differing positions (expected 6)";
  return o;
}

Outcome smallest_rotation() {
  std::mt19937_64 rng(4);
  std::size_t bad = 0, non_primitive = 0;
  for (int i = 0; i < 1000; ++i) {
    std::string s;
    if (i % 3 == 0) {
      s = oracle::power(oracle::random_string(rng, 1 + rng() % 6, 2 + static_cast<int>(rng() % 2)), 2 + rng() % 30);
    } else {
      s = to_string(mixed_bytes(rng, 1 + rng() % 300));
    }
    if (!is_primitive(view(s))) ++non_primitive;
    if (str(bwt_inverse(bwt_forward(view(s)).transform)) != oracle::min_rotation(s)) ++bad;
  }
  Outcome o;
  o.pass = bad == 0 && non_primitive > 0;
  o.detail = "1000 strings (" + std::to_string(non_primitive) + " non-primitive), " + std::to_string(bad) + " violations";
  return o;
}

Outcome theta_cycles() {
  std::mt19937_64 rng(5);
  std::size_t bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const Bytes s = mixed_bytes(rng, 1 + rng() % 2000);
    const LyndonFactorization f = lyndon_factorize(s);
    std::vector<std::size_t> factors;
    bool valid = true;
    std::string prev;
    for (std::size_t k = 0; k < f.factor_count(); ++k) {
      const std::string w = to_string(f.factor(s, k));
      valid = valid && oracle::is_lyndon(w) && (k == 0 || prev >= w);
      prev = w;
      factors.push_back(w.size());
    }
    auto cycles = match_permutation(bwts_forward(s)).cycle_lengths();
    std::sort(cycles.begin(), cycles.end());
    std::sort(factors.begin(), factors.end());
    if (!valid || cycles != factors) ++bad;
  }
  Outcome o;
  o.pass = bad == 0;
  o.detail = "1000 strings, " + std::to_string(bad) + " violations";
  return o;
}

Outcome lyndon_oracle() {
  std::size_t strings = 0, bad = 0, counted_to_9 = 0;
  for (std::size_t len = 1; len <= 10; ++len) {
    oracle::for_each_string("abc", len, [&](const std::string& s) {
      ++strings;
      const auto all = oracle::lyndon_factorizations(s);
      const LyndonFactorization f = lyndon_factorize(view(s));
      std::vector<std::string> got;
      for (std::size_t k = 0; k < f.factor_count(); ++k) got.push_back(to_string(f.factor(view(s), k)));
      if (all.size() != 1 || all.front() != got) ++bad;
    });
    if (len == 9) counted_to_9 = strings;
  }
  Outcome o;
  o.pass = bad == 0;
  o.detail = std::to_string(strings) + " strings of length 1..10 (" + std::to_string(counted_to_9) +
             " of length 1..9), " + std::to_string(bad) + " violations";
  return o;
}

std::vector<fs::path> default_corpus() {
  const std::vector<std::string> candidates{
      "/usr/share/common-licenses/GPL-3",       "/usr/share/common-licenses/LGPL-2.1",
      "/usr/share/common-licenses/GFDL-1.3",    "/usr/share/common-licenses/MPL-2.0",
      "/usr/share/common-licenses/Apache-2.0",  "/usr/lib/python3.10/_pydecimal.py",
      "/usr/lib/python3.10/turtle.py",          "/usr/lib/python3.10/inspect.py",
      "/usr/lib/python3.10/pydoc.py",           "/usr/lib/python3.10/tarfile.py",
      "/usr/lib/python3.10/doctest.py",         "/usr/lib/python3.10/argparse.py",
      "/usr/include/c++/11/bits/basic_string.h", "/usr/include/c++/11/bits/stl_algo.h",
      "/usr/include/c++/11/bits/random.h",      "/usr/include/c++/11/bits/regex.h"};
  std::vector<fs::path> out;
  for (const auto& c : candidates) {
    std::error_code ec;
    if (fs::is_regular_file(c, ec)) out.emplace_back(c);
  }
  return out;
}

Outcome compression(const std::vector<std::string>& corpus_args) {
  std::vector<fs::path> roots(corpus_args.begin(), corpus_args.end());
  const std::vector<fs::path> files = roots.empty() ? default_corpus() : collect_files(roots);

  const std::vector<PipelineConfig> configs{PipelineConfig{TransformKind::bwt}, PipelineConfig{TransformKind::bwts}};
  std::uint64_t original = 0, bwt = 0, bwts = 0;
  std::string roundtrip = "ok";
  try {
    for (const auto& r : run_bench(files, configs)) {
      original += r.original_bytes;
      bwt += r.compressed_bytes[0];
      bwts += r.compressed_bytes[1];
    }
  } catch (const Error& e) {
    roundtrip = e.what();
  }
  const bool big_enough = files.size() >= 10 && original >= (1u << 20);
  const bool a = roundtrip == "ok";
  const bool b = a && static_cast<double>(bwts) <= static_cast<double>(bwt) * 1.005;

  const BenchRecord bib{"BIB", 111261, {32022, 31197}};
  const std::string bib_row = fmt("%.2f", bib.ratio(0)) + "/" + fmt("%.2f", bib.ratio(1)) + "/" +
                              fmt("%.2f", bib.absolute_gain()) + "/" + fmt("%.2f", bib.relative_gain());
  const bool c = bib_row == "28.78/28.04/0.74/2.58";

  Outcome o;
  o.pass = big_enough && a && b && c;
  o.detail = std::to_string(files.size()) + " files, " + std::to_string(original) + " bytes" +
             (big_enough ? "" : " (corpus below 10 files / 1 MiB)") + "; (a) round trips " + roundtrip +
             "; (b) bwts " + std::to_string(bwts) + " vs bwt " + std::to_string(bwt) + " bytes (" +
             fmt("%.2f", ratio_percent(static_cast<double>(bwts), static_cast<double>(original))) + "% vs " +
             fmt("%.2f", ratio_percent(static_cast<double>(bwt), static_cast<double>(original))) + "%, limit +0.5%) " +
             (b ? "ok" : "FAIL") + "; (c) BIB row " + bib_row + (c ? " ok" : " FAIL");
  return o;
}

// Zipf-distributed words over a fixed synthetic vocabulary.
Bytes natural_text(std::size_t len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> vocab;
  std::vector<double> weights;
  for (int i = 0; i < 8000; ++i) {
    std::string w;
    const std::size_t wl = 1 + rng() % 3 + rng() % 5 + rng() % 4;
    for (std::size_t k = 0; k < wl; ++k) w += static_cast<char>("etaoinshrdlucmfwypvbgkjqxz"[std::min<std::size_t>(rng() % 26, rng() % 26)]);
    vocab.push_back(w);
    weights.push_back(1.0 / (i + 1));
  }
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  Bytes out;
  out.reserve(len);
  std::size_t in_line = 0;
  while (out.size() < len) {
    const std::string& w = vocab[pick(rng)];
    out.insert(out.end(), w.begin(), w.end());
    const std::uint64_t r = rng() % 100;
    const char* sep = r < 6 ? ", " : r < 10 ? ". " : " ";
    for (const char* p = sep; *p; ++p) out.push_back(static_cast<Byte>(*p));
    in_line += w.size() + 1;
    if (in_line > 70) {
      out.back() = '\n';
      in_line = 0;
    }
  }
  out.resize(len);
  return out;
}

Bytes random_bytes(std::size_t len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Bytes out(len);
  for (std::size_t i = 0; i < len; i += 8) {
    const std::uint64_t v = rng();
    for (std::size_t k = 0; k < 8 && i + k < len; ++k) out[i + k] = static_cast<Byte>(v >> (8 * k));
  }
  return out;
}

Outcome scaling(std::size_t max_mib) {
  Outcome o;
  o.pass = max_mib >= 16;
  std::ostringstream detail;
  if (max_mib < 16) detail << "sizes capped at " << max_mib << " MiB; ";
  for (int cls = 0; cls < 2; ++cls) {
    detail << (cls == 0 ? "random" : "text") << ":";
    std::vector<std::size_t> sizes;
    std::vector<Bytes> inputs;
    for (std::size_t mib = 1; mib <= max_mib; mib *= 2) {
      sizes.push_back(mib);
      inputs.push_back(cls == 0 ? random_bytes(mib << 20, mib) : natural_text(mib << 20, mib));
    }
    // Repetitions are interleaved across sizes so that every size sees the
    // same machine conditions; the best time of each size is kept.
    constexpr int kReps = 3;
    std::vector<double> best(sizes.size(), 1e300);
    std::vector<std::size_t> aux(sizes.size(), 0);
    bool ok = true;
    for (int r = 0; r < kReps; ++r) {
      for (std::size_t i = 0; i < sizes.size(); ++i) {
        const auto t0 = Clock::now();
        std::size_t base = heap::mark();
        Bytes eta = bwts_forward(inputs[i]);
        aux[i] = std::max(aux[i], heap::peak.load() - base);
        base = heap::mark();
        const Bytes back = bwts_inverse(eta);
        aux[i] = std::max(aux[i], heap::peak.load() - base);
        best[i] = std::min(best[i], seconds_since(t0));
        ok = ok && back == inputs[i];
      }
    }
    double worst_growth = 0, worst_mem = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const double mem = static_cast<double>(aux[i]) / static_cast<double>(inputs[i].size());
      worst_mem = std::max(worst_mem, mem);
      if (i > 0) worst_growth = std::max(worst_growth, best[i] / best[i - 1]);
      detail << ' ' << sizes[i] << "M=" << fmt("%.2f", best[i]) << "s/" << fmt("%.1f", mem) << 'n';
    }
    if (!ok) {
      o.pass = false;
      detail << " (ROUNDTRIP FAIL)";
    }
    if (worst_growth > 2.6 || worst_mem > 16.0) o.pass = false;
    detail << " [max growth " << fmt("%.2f", worst_growth) << "x (limit 2.6), peak aux " << fmt("%.1f", worst_mem)
           << "n (limit 16n)]" << (cls == 0 ? "; " : "");
  }
  o.detail = detail.str();
  return o;
}

Outcome stage_roundtrips() {
  std::mt19937_64 rng(9);
  std::size_t rle_bad = 0, mtf_bad = 0, ac_bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const Bytes x = rng() % 50 == 0 ? Bytes{} : mixed_bytes(rng, 1 + rng() % 8192);
    if (rle_decode(rle_encode(x)) != x) ++rle_bad;
  }
  for (int i = 0; i < 1000; ++i) {
    const Bytes x = rng() % 50 == 0 ? Bytes{} : mixed_bytes(rng, 1 + rng() % 8192);
    if (mtf_decode(mtf_encode(x)) != x) ++mtf_bad;
  }
  for (int i = 0; i < 1000; ++i) {
    const Bytes x = rng() % 50 == 0 ? Bytes{} : mixed_bytes(rng, 1 + rng() % 8192);
    try {
      if (ac_decode(ac_encode(x), x.size()) != x) ++ac_bad;
    } catch (const Error&) {
      ++ac_bad;
    }
  }
  Outcome o;
  o.pass = rle_bad == 0 && mtf_bad == 0 && ac_bad == 0;
  o.detail = "RLE " + std::to_string(rle_bad) + "/1000, MTF " + std::to_string(mtf_bad) + "/1000, AC " +
             std::to_string(ac_bad) + "/1000 violations";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only;
  std::vector<std::string> corpus;
  std::size_t max_mib = 16;
  app.add_option("--only", only, "Run only these criteria")->check(CLI::Range(1, 9));
  app.add_option("--corpus", corpus, "Corpus files or directories for criterion 7");
  app.add_option("--max-mib", max_mib, "Largest scaling input; below 16 the criterion cannot pass");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"bijectivity on {a,b}^1..12", bijectivity},
      {"round-trip fuzz, both orders", roundtrip_fuzz},
      {"62-character phrase", phrase},
      {"bwt smallest-rotation contract", smallest_rotation},
      {"theta cycles match Lyndon factors", theta_cycles},
      {"Lyndon factorization oracle", lyndon_oracle},
      {"compression comparison", [&] { return compression(corpus); }},
      {"time and memory scaling", [&] { return scaling(max_mib); }},
      {"stage round trips", stage_roundtrips},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << criteria[i].first << " -- " << o.detail
              << " [" << fmt("%.1f", seconds_since(t0)) << " s]" << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
