// The term-rewriting core: arithmetization of Boolean gates, sorted-sum
// merging, duplicate handling, and the canonical s/c constructors.
//
// The constructors are procedural implementations of the simplification
// simplification rules (negation extraction, duplicate removal, s-flattening inside s and
// c) applied eagerly at construction time, so every s/c node the engine ever
// builds is already canonical: argument lists sorted, coefficients
// normalized, and no s addends remaining.
#pragma once

#include "mulrw/term.hpp"

namespace mulrw {

struct RewriteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RewriteStats {
  unsigned long long mk_s_calls = 0;
  unsigned long long mk_c_calls = 0;
  unsigned long long merges = 0;
  unsigned long long gate_arith = 0;
};

// Linear one-pass merge of two sorted summation lists.  Equal terms combine
// coefficients; zero coefficients are dropped; never re-sorts.
SumList merge_sum(const SumList& l1, const SumList& l2, RewriteStats* stats = nullptr);

// Reduce every coefficient mod 2 (pairs vanish): preserves s of the sum.
SumList dedup_for_s(const SumList& l);

// Split each coefficient k into floor(k/2) (extracted) and k mod 2
// (remaining), so that c(in) = extracted + c(remaining).  Covers both the
// duplicate-removal and the negation-extraction cases.
struct DedupForC {
  SumList extracted;
  SumList remaining;
};
DedupForC dedup_for_c(const SumList& l);

// Stable three-way split of a sorted list by addend kind.
SCArgs partition_args(SumList l);
// Inverse: one sorted list over all three groups.
SumList flatten_args(const SCArgs& a);

// Flatten a wire-level term into a summation list (strips Bitp, inlines
// Sum entries and constants).
SumList to_sumlist(const TermPtr& t);

class RewriteEngine {
 public:
  explicit RewriteEngine(bool hashing = true) : builder_(hashing) {}

  const TermBuilder& builder() const { return builder_; }
  RewriteStats& stats() { return stats_; }
  const RewriteStats& stats() const { return stats_; }

  // Canonical s constructor.  Returns a Bitp-wrapped SNode, or a Const when
  // the list collapses.  eval(result) == s(eval(input)).
  TermPtr mk_s(SumList l);

  // Canonical c constructor.  Returns a Sum in general (the rules push
  // addends out of the c), a bare CNode, a single term, or Const 0.
  // eval(result) == c(eval(input)).
  TermPtr mk_c(SumList l);

  // Multilinear-polynomial form of a Boolean term whose gate leaves are
  // bit-valued.  AND chains collapse into AndProducts with literal dedup.
  SumList bool_to_arith(const TermPtr& t);

  SumList merge(const SumList& a, const SumList& b) {
    return merge_sum(a, b, &stats_);
  }

 private:
  SumList poly_mul(const SumList& p, const SumList& q);
  TermBuilder builder_;
  RewriteStats stats_;
};

}  // namespace mulrw
