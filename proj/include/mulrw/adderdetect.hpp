// Classify hierarchical submodules as half/full/vector adders by bounded
// exhaustive simulation, and substitute their s/c output templates during
// symbolic simulation.
#pragma once

#include <array>
#include <optional>

#include "mulrw/rewrite.hpp"
#include "mulrw/sim.hpp"

namespace mulrw {

enum class AdderKind { HalfAdder, FullAdder, VectorAdder };

struct AdderTemplate {
  AdderKind kind;
  // Unit adders: which output bit is the sum and which the carry.
  int sum_out = -1;
  int carry_out = -1;
  // Vector adder: operand width, input bit indices (into input_bits()) of
  // the two addend vectors and the optional carry-in, and the output bit
  // index of result bit k (little-endian; may include the final carry).
  int width = 0;
  std::vector<int> a_bits, b_bits;
  int cin_bit = -1;
  std::vector<int> out_bits;
};

// Raised when an adder input cannot be certified bit-valued; aborts the
// proof rather than producing an unsound substitution.
struct UnreliableBitp : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bitp side-condition bookkeeping: adder hypotheses should always discharge
// with an O(1) annotation lookup; any recursive re-derivation is counted.
struct BitpCounters {
  unsigned long long lookups = 0;
  unsigned long long rederivations = 0;
};
BitpCounters& bitp_counters();

// True if t is certifiably a bit.  Shape-certified terms (Bitp wrappers,
// vars, 0/1 constants, partial products, s nodes) count as lookups; anything
// else triggers a recursive range analysis counted as a re-derivation.
bool certify_bit(const TermPtr& t);

// Bounded exhaustive classification: total input bits <= limit.  Honors an
// adder_hint by checking only the hinted shape.  Returns nullopt for
// NotAdder and for modules beyond the limit (the symbolic-simulation
// fallback in the engine covers wide ripple compositions).
std::optional<AdderTemplate> classify_exhaustive(const Simulator& sim,
                                                 const ModuleDef& m, int limit);

// Substitute actual terms (in input_bits() order) into the template's s/c
// output forms; results in output_bits() order, each Bitp-certified.
std::vector<TermPtr> instantiate_template(const AdderTemplate& t,
                                          const std::vector<TermPtr>& actuals,
                                          RewriteEngine& rw);

}  // namespace mulrw
