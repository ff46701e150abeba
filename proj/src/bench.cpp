#include "mulrw/bench.hpp"

#include <atomic>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace mulrw {

using nlohmann::json;

std::vector<GenConfig> parse_manifest(const std::string& text) {
  json j = json::parse(text);
  if (!j.is_array()) throw GenError("manifest must be a JSON array");
  std::vector<GenConfig> entries;
  for (const auto& e : j) {
    GenConfig c;
    c.arch = arch_from_string(e.at("arch").get<std::string>());
    c.pp = pp_from_string(e.at("pp").get<std::string>());
    c.is_signed = e.value("signed", false);
    c.n = e.at("n").get<int>();
    c.m = e.at("m").get<int>();
    if (e.value("op", "MULT") == "MAC") c.op = SpecOp::Mac;
    c.out_width = e.value("out_width", 0);
    entries.push_back(c);
  }
  return entries;
}

std::vector<GenConfig> load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GenError("cannot open manifest: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str());
}

std::string serialize_manifest(const std::vector<GenConfig>& entries) {
  json j = json::array();
  for (const auto& c : entries) {
    json e;
    e["arch"] = to_string(c.arch);
    e["pp"] = to_string(c.pp);
    e["signed"] = c.is_signed;
    e["n"] = c.n;
    e["m"] = c.m;
    e["op"] = c.op == SpecOp::Mac ? "MAC" : "MULT";
    if (c.out_width > 0) e["out_width"] = c.out_width;
    j.push_back(e);
  }
  return j.dump(2) + "\n";
}

std::string bench_name(const GenConfig& cfg) {
  std::ostringstream s;
  s << to_string(cfg.arch) << "/" << to_string(cfg.pp) << " " << cfg.n << "x"
    << cfg.m << (cfg.is_signed ? " signed" : " unsigned");
  if (cfg.op == SpecOp::Mac) s << " mac";
  return s.str();
}

BenchResult bench_entry(const GenConfig& cfg, const VerifyOptions& base) {
  BenchResult r;
  r.cfg = cfg;
  try {
    Netlist nl = generate(cfg);
    SpecDescriptor d = spec_of(cfg);

    VerifyOptions on = base;
    on.hashing = true;
    VerifyReport rep_on = verify(nl, d, on);
    r.status_on = rep_on.status;
    r.secs_on = rep_on.stats.elapsed_sec;
    r.fast_path_on = rep_on.stats.compare.hash_fast_path;

    VerifyOptions off = base;
    off.hashing = false;
    VerifyReport rep_off = verify(nl, d, off);
    r.status_off = rep_off.status;
    r.secs_off = rep_off.stats.elapsed_sec;
    r.fast_path_off = rep_off.stats.compare.hash_fast_path;
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

std::vector<BenchResult> run_bench(const std::vector<GenConfig>& entries,
                                   const VerifyOptions& base, int jobs) {
  std::vector<BenchResult> results(entries.size());
  if (jobs < 1) jobs = 1;
  jobs = std::min<int>(jobs, static_cast<int>(entries.size()));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < entries.size(); ++i)
      results[i] = bench_entry(entries[i], base);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  for (int t = 0; t < jobs; ++t)
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < entries.size(); i = next++)
        results[i] = bench_entry(entries[i], base);
    });
  for (auto& w : workers) w.join();
  return results;
}

namespace {

const char* status_str(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::Proved: return "PROVED";
    case VerifyStatus::Refuted: return "REFUTED";
    case VerifyStatus::Unknown: return "UNKNOWN";
  }
  return "?";
}

}  // namespace

std::string format_table(const std::vector<BenchResult>& results) {
  std::ostringstream s;
  s << std::left << std::setw(34) << "benchmark" << std::right << std::setw(12)
    << "enabled(s)" << std::setw(13) << "disabled(s)" << std::setw(10)
    << "speedup" << "  status\n";
  for (const auto& r : results) {
    s << std::left << std::setw(34) << bench_name(r.cfg) << std::right;
    if (!r.error.empty()) {
      s << "  error: " << r.error << "\n";
      continue;
    }
    s << std::setw(12) << std::fixed << std::setprecision(3) << r.secs_on
      << std::setw(13) << r.secs_off << std::setw(9) << std::setprecision(2)
      << r.speedup() << "x"
      << "  " << status_str(r.status_on);
    if (r.status_off != r.status_on) s << "/" << status_str(r.status_off);
    s << "\n";
  }
  return s.str();
}

}  // namespace mulrw
