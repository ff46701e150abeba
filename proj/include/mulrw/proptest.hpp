// Randomized property harness: every simplification rule the constructors
// implement is bound to the integer evaluator as ground truth.
#pragma once

#include <cstdint>

#include "mulrw/rewrite.hpp"

namespace mulrw {

struct RuleResult {
  std::string name;
  unsigned long long trials = 0;
  unsigned long long failures = 0;
  std::string first_failure;  // minimal reproducer in the debug term syntax
};

// Seeded random generator of canonical terms / summation lists and bit
// environments, used by the suite and by unit tests.
class TermGen {
 public:
  TermGen(std::uint64_t seed, const TermBuilder& b, RewriteEngine& rw)
      : state_(seed ? seed : 1), b_(&b), rw_(&rw) {}

  std::uint64_t next();
  std::int64_t coeff();                 // nonzero, small
  TermPtr term(int depth);              // canonical term (vars are bits)
  SumList sum(int depth, int max_len);  // sorted canonical summation list
  EvalEnv bit_env();                    // random {0,1} assignment to the pool

 private:
  std::uint64_t state_;
  const TermBuilder* b_;
  RewriteEngine* rw_;
};

// Lemma suite: each rule checked on `trials` random instances (numeric
// identities on random integers, constructor soundness on random term
// lists), plus exhaustive Boolean cases for the gate rules.
std::vector<RuleResult> rule_suite(std::uint64_t seed,
                                     unsigned long long trials = 10000);

}  // namespace mulrw
