// Benchmark multiplier generator: simple and Booth-2 partial products,
// array / Wallace / Dadda reduction, ripple-carry final stage, hierarchical
// HA/FA/RCA adder modules.  Plus seeded single-gate mutation for negative
// testing.
#pragma once

#include <cstdint>

#include "mulrw/netlist.hpp"
#include "mulrw/specgen.hpp"

namespace mulrw {

enum class Arch { Array, Wallace, Dadda };
enum class PPGen { Simple, Booth2 };

struct GenConfig {
  Arch arch = Arch::Wallace;
  PPGen pp = PPGen::Simple;
  bool is_signed = false;   // applies to both operands
  int n = 0;
  int m = 0;
  SpecOp op = SpecOp::Mult; // Mac adds an "acc" input port of out width
  int out_width = 0;        // 0: defaults to n + m
};

struct GenError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

SpecDescriptor spec_of(const GenConfig& cfg);

// Top module "top" with ports a[n], b[m] (, acc[outw]) -> out[outw].
Netlist generate(const GenConfig& cfg);

struct Mutation {
  std::string module;
  std::size_t node = 0;
  std::string description;  // replayable from the seed
};

// One random single-gate edit (op swap, input rewire to an earlier wire, or
// output stuck-at); deterministic in the seed.  The mutant is always a valid
// netlist but not necessarily functionally inequivalent.
std::pair<Netlist, Mutation> mutate(const Netlist& n, std::uint64_t seed);

// Names for CLI/manifest parsing.
std::string to_string(Arch a);
std::string to_string(PPGen p);
Arch arch_from_string(const std::string& s);
PPGen pp_from_string(const std::string& s);

}  // namespace mulrw
