// Benchmark harness: run verification over a manifest of generator configs
// with term hashing enabled and disabled, and report a timing/speed-up table.
#pragma once

#include "mulrw/checker.hpp"
#include "mulrw/genmul.hpp"

namespace mulrw {

struct BenchResult {
  GenConfig cfg;
  VerifyStatus status_on = VerifyStatus::Unknown;
  VerifyStatus status_off = VerifyStatus::Unknown;
  double secs_on = 0.0;
  double secs_off = 0.0;
  unsigned long long fast_path_on = 0;   // hash fast-path hits, hashing enabled
  unsigned long long fast_path_off = 0;  // must be 0
  std::string error;                     // non-empty if the entry failed

  double speedup() const { return secs_on > 0 ? secs_off / secs_on : 0.0; }
};

// Manifest: JSON array of entries {"arch","pp","signed","n","m",
// optional "op" ("MULT"/"MAC") and "out_width"}.
std::vector<GenConfig> load_manifest(const std::string& path);
std::vector<GenConfig> parse_manifest(const std::string& text);
std::string serialize_manifest(const std::vector<GenConfig>& entries);

// Verify one generated benchmark twice (hashing on/off).  Failures are
// captured in .error, never thrown.
BenchResult bench_entry(const GenConfig& cfg, const VerifyOptions& base);

// Run all entries, up to `jobs` in parallel (each verification itself is
// single-threaded).
std::vector<BenchResult> run_bench(const std::vector<GenConfig>& entries,
                                   const VerifyOptions& base, int jobs = 1);

std::string bench_name(const GenConfig& cfg);
std::string format_table(const std::vector<BenchResult>& results);

}  // namespace mulrw
