// Command-line front end: verify, generate, bench, simulate, dump.
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mulrw/bench.hpp"
#include "mulrw/checker.hpp"
#include "mulrw/genmul.hpp"
#include "mulrw/symsim.hpp"

using namespace mulrw;
using nlohmann::json;

namespace {

constexpr int kExitError = 3;

std::uint64_t env_seed(std::uint64_t fallback) {
  if (const char* s = std::getenv("MULTREWRITE_SEED"))
    return std::strtoull(s, nullptr, 0);
  return fallback;
}

struct SpecFlags {
  std::string op = "mult";
  std::string widths;
  bool is_signed = false;
  bool is_unsigned = false;
  int out_width = 0;

  void attach(CLI::App* cmd, bool required = true) {
    cmd->add_option("--op", op, "Operation: mult|mac")
        ->check(CLI::IsMember({"mult", "mac"}));
    auto* w = cmd->add_option("--widths", widths, "Operand widths, e.g. 8x8");
    if (required) w->required();
    cmd->add_flag("--signed", is_signed, "Signed operands");
    cmd->add_flag("--unsigned", is_unsigned, "Unsigned operands (default)");
    cmd->add_option("--out-width", out_width, "Output width (default n+m)");
  }

  SpecDescriptor descriptor() const {
    SpecDescriptor d;
    d.op = op == "mac" ? SpecOp::Mac : SpecOp::Mult;
    auto x = widths.find('x');
    if (x == std::string::npos)
      throw CLI::ValidationError("--widths", "expected NxM, e.g. 8x8");
    d.n = std::stoi(widths.substr(0, x));
    d.m = std::stoi(widths.substr(x + 1));
    if (d.n < 1 || d.m < 1)
      throw CLI::ValidationError("--widths", "widths must be >= 1");
    if (is_signed && is_unsigned)
      throw CLI::ValidationError("--signed", "conflicts with --unsigned");
    d.a_signed = d.b_signed = is_signed;
    d.out_width = out_width;
    return d;
  }
};

struct EngineFlags {
  std::string hashing = "on";
  int exhaustive_limit = 20;
  unsigned long long cex_budget = 100000;

  void attach(CLI::App* cmd) {
    cmd->add_option("--hashing", hashing, "Term hashing: on|off")
        ->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--exhaustive-limit", exhaustive_limit,
                    "Adder classification input-bit limit");
    cmd->add_option("--cex-budget", cex_budget,
                    "Random counterexample vectors when inputs exceed 16 bits");
  }

  VerifyOptions options() const {
    VerifyOptions o;
    o.hashing = hashing == "on";
    o.exhaustive_limit = exhaustive_limit;
    o.cex_budget = cex_budget;
    o.seed = env_seed(o.seed);
    return o;
  }
};

void write_report(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report: " + path);
  out << text;
}

json report_json(const VerifyReport& r, const SpecDescriptor& d) {
  json j;
  j["status"] = r.status == VerifyStatus::Proved    ? "PROVED"
                : r.status == VerifyStatus::Refuted ? "REFUTED"
                                                    : "UNKNOWN";
  j["op"] = d.op == SpecOp::Mac ? "MAC" : "MULT";
  j["n"] = d.n;
  j["m"] = d.m;
  j["signed"] = d.a_signed;
  j["out_width"] = spec_out_width(d);
  j["bit_ok"] = r.bit_ok;
  if (!r.message.empty()) j["message"] = r.message;
  if (r.cex) {
    json c;
    for (const auto& [port, v] : r.cex->inputs) c["inputs"][port] = v.str();
    c["got"] = r.cex->got.str();
    c["want"] = r.cex->want.str();
    j["counterexample"] = c;
  }
  j["stats"] = {{"node_visits", r.stats.node_visits},
                {"mk_s_calls", r.stats.rewrite.mk_s_calls},
                {"mk_c_calls", r.stats.rewrite.mk_c_calls},
                {"merges", r.stats.rewrite.merges},
                {"gate_arith", r.stats.rewrite.gate_arith},
                {"bitp_lookups", r.stats.bitp.lookups},
                {"bitp_rederivations", r.stats.bitp.rederivations},
                {"compare_total", r.stats.compare.total},
                {"hash_fast_path", r.stats.compare.hash_fast_path},
                {"compare_structural", r.stats.compare.structural},
                {"elapsed_sec", r.stats.elapsed_sec}};
  return j;
}

std::string report_human(const VerifyReport& r, const SpecDescriptor& d) {
  std::ostringstream s;
  s << "status: "
    << (r.status == VerifyStatus::Proved    ? "PROVED"
        : r.status == VerifyStatus::Refuted ? "REFUTED"
                                            : "UNKNOWN")
    << "\n";
  s << "spec: " << (d.op == SpecOp::Mac ? "mac " : "mult ") << d.n << "x"
    << d.m << (d.a_signed ? " signed" : " unsigned") << " out-width "
    << spec_out_width(d) << "\n";
  if (!r.message.empty()) s << "note: " << r.message << "\n";
  if (r.cex) {
    s << "counterexample:";
    for (const auto& [port, v] : r.cex->inputs) s << " " << port << "=" << v;
    s << " -> got " << r.cex->got << ", want " << r.cex->want << "\n";
  }
  s << "stats: visits=" << r.stats.node_visits
    << " mk_s=" << r.stats.rewrite.mk_s_calls
    << " mk_c=" << r.stats.rewrite.mk_c_calls
    << " hash_fast_path=" << r.stats.compare.hash_fast_path
    << " bitp_lookups=" << r.stats.bitp.lookups
    << " bitp_rederivations=" << r.stats.bitp.rederivations << " elapsed="
    << r.stats.elapsed_sec << "s\n";
  return s.str();
}

std::map<std::string, BigInt> parse_inputs(const std::string& text) {
  std::map<std::string, BigInt> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("bad input assignment: " + item);
    values[item.substr(0, eq)] = BigInt(item.substr(eq + 1));
  }
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gate-level multiplier equivalence checker"};
  app.require_subcommand(1);

  // verify ------------------------------------------------------------------
  auto* v = app.add_subcommand("verify", "Verify a netlist against a multiplier spec");
  std::string v_file, v_report, v_format = "human";
  SpecFlags v_spec;
  EngineFlags v_eng;
  v->add_option("netlist", v_file, "Netlist JSON file")->required();
  v_spec.attach(v);
  v_eng.attach(v);
  v->add_option("--report", v_report, "Write the report to this path");
  v->add_option("--format", v_format, "Report format")
      ->check(CLI::IsMember({"human", "machine"}));

  // generate ----------------------------------------------------------------
  auto* g = app.add_subcommand("generate", "Generate a benchmark multiplier netlist");
  std::string g_out, g_arch = "WALLACE", g_pp = "SIMPLE";
  SpecFlags g_spec;
  std::int64_t g_mutate = -1;
  g->add_option("output", g_out, "Output netlist path")->required();
  g_spec.attach(g);
  g->add_option("--arch", g_arch, "ARRAY|WALLACE|DADDA")
      ->check(CLI::IsMember({"ARRAY", "WALLACE", "DADDA"}));
  g->add_option("--pp", g_pp, "SIMPLE|BOOTH2")
      ->check(CLI::IsMember({"SIMPLE", "BOOTH2"}));
  g->add_option("--mutate", g_mutate, "Apply one seeded single-gate mutation");

  // bench -------------------------------------------------------------------
  auto* bch = app.add_subcommand("bench", "Run a benchmark manifest with hashing on/off");
  std::string b_manifest, b_report, b_format = "human";
  int b_jobs = 1;
  EngineFlags b_eng;
  bch->add_option("manifest", b_manifest, "JSON manifest of generator configs")
      ->required();
  bch->add_option("--jobs", b_jobs, "Parallel entries");
  b_eng.attach(bch);
  bch->add_option("--report", b_report, "Write the table to this path");
  bch->add_option("--format", b_format, "Report format")
      ->check(CLI::IsMember({"human", "machine"}));

  // simulate ----------------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "Concrete simulation of the top module");
  std::string s_file, s_inputs;
  sim->add_option("netlist", s_file)->required();
  sim->add_option("--inputs", s_inputs, "Comma-separated port=value list")
      ->required();

  // dump --------------------------------------------------------------------
  auto* dmp = app.add_subcommand("dump", "Print canonical output terms of a netlist");
  std::string d_file;
  EngineFlags d_eng;
  dmp->add_option("netlist", d_file)->required();
  d_eng.attach(dmp);

  CLI11_PARSE(app, argc, argv);

  try {
    if (v->parsed()) {
      Netlist nl = load_netlist(v_file);
      SpecDescriptor d = v_spec.descriptor();
      VerifyReport rep = verify(nl, d, v_eng.options());
      std::string text = v_format == "machine" ? report_json(rep, d).dump(2) + "\n"
                                               : report_human(rep, d);
      std::cout << text;
      write_report(v_report, text);
      return rep.status == VerifyStatus::Proved    ? 0
             : rep.status == VerifyStatus::Refuted ? 1
                                                   : 2;
    }
    if (g->parsed()) {
      GenConfig cfg;
      SpecDescriptor d = g_spec.descriptor();
      cfg.arch = arch_from_string(g_arch);
      cfg.pp = pp_from_string(g_pp);
      cfg.is_signed = d.a_signed;
      cfg.n = d.n;
      cfg.m = d.m;
      cfg.op = d.op;
      cfg.out_width = d.out_width;
      Netlist nl = generate(cfg);
      if (g_mutate >= 0) {
        auto [mut, info] = mutate(nl, env_seed(static_cast<std::uint64_t>(g_mutate)));
        nl = std::move(mut);
        std::cout << "mutation: " << info.description << "\n";
      }
      save_netlist(nl, g_out);
      return 0;
    }
    if (bch->parsed()) {
      std::vector<GenConfig> entries = load_manifest(b_manifest);
      std::vector<BenchResult> results =
          run_bench(entries, b_eng.options(), b_jobs);
      std::string text;
      if (b_format == "machine") {
        json j = json::array();
        for (const auto& r : results) {
          json e;
          e["benchmark"] = bench_name(r.cfg);
          e["secs_on"] = r.secs_on;
          e["secs_off"] = r.secs_off;
          e["speedup"] = r.speedup();
          e["fast_path_on"] = r.fast_path_on;
          e["fast_path_off"] = r.fast_path_off;
          e["status_on"] = r.status_on == VerifyStatus::Proved ? "PROVED"
                           : r.status_on == VerifyStatus::Refuted ? "REFUTED"
                                                                  : "UNKNOWN";
          if (!r.error.empty()) e["error"] = r.error;
          j.push_back(e);
        }
        text = j.dump(2) + "\n";
      } else {
        text = format_table(results);
      }
      std::cout << text;
      write_report(b_report, text);
      for (const auto& r : results)
        if (!r.error.empty()) return kExitError;
      return 0;
    }
    if (sim->parsed()) {
      Netlist nl = load_netlist(s_file);
      Simulator s(nl);
      auto out = s.run_top(parse_inputs(s_inputs));
      for (const auto& [port, value] : out)
        std::cout << port << " = " << value << "\n";
      return 0;
    }
    if (dmp->parsed()) {
      Netlist nl = load_netlist(d_file);
      VerifyOptions vo = d_eng.options();
      EngineOptions eo;
      eo.hashing = vo.hashing;
      eo.exhaustive_limit = vo.exhaustive_limit;
      Engine eng(nl, eo);
      auto raw = eng.sym_run();
      auto canon = eng.canonical_outputs(raw);
      auto bits = nl.top_module().output_bits();
      for (std::size_t i = 0; i < bits.size(); ++i)
        std::cout << bits[i] << " = " << term_to_string(canon[i]) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
