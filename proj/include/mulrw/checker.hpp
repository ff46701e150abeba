// Equivalence checking: symbolic simulation of the design, syntactic
// comparison against the canonical specification terms, and counterexample
// search (exhaustive for small inputs, seeded random otherwise) when the
// forms disagree.
#pragma once

#include "mulrw/adderdetect.hpp"
#include "mulrw/netlist.hpp"
#include "mulrw/specgen.hpp"
#include "mulrw/symsim.hpp"

namespace mulrw {

enum class VerifyStatus { Proved, Refuted, Unknown };

struct Counterexample {
  std::map<std::string, BigInt> inputs;  // port -> value
  BigInt got;
  BigInt want;
};

struct VerifyOptions {
  bool hashing = true;
  int exhaustive_limit = 20;        // adder classification input-bit bound
  int cex_exhaustive_max_bits = 16; // exhaustive cex search up to this many input bits
  unsigned long long cex_budget = 100000;  // random vectors when beyond
  unsigned long long seed = 0x5eed;
  bool audit = false;               // per-node visit-count audit
};

struct VerifyStats {
  unsigned long long node_visits = 0;
  RewriteStats rewrite;
  BitpCounters bitp;
  CompareCounters compare;
  double elapsed_sec = 0.0;
  std::size_t mismatched_bits = 0;
};

struct VerifyReport {
  VerifyStatus status = VerifyStatus::Unknown;
  std::vector<bool> bit_ok;                // per output bit, little-endian
  std::optional<Counterexample> cex;       // present iff Refuted
  VerifyStats stats;
  std::string message;                     // diagnostics for Unknown/Refuted
};

// Proves or refutes: design top-level outputs == spec, mod 2^out_width.
// The top module must expose input ports "a" (width n), "b" (width m),
// "acc" (width out_width, MAC only) and a single output of width out_width.
VerifyReport verify(const Netlist& n, const SpecDescriptor& d,
                    const VerifyOptions& o = {});

// Concrete oracle: simulate the design top on port values (2-valued).
BigInt simulate_design(const Netlist& n, const std::map<std::string, BigInt>& inputs);

}  // namespace mulrw
