// Core term representation: immutable expression nodes for the s/c
// arithmetic world, total ordering with a hash fast path, and an integer
// evaluator that serves as the ground truth for every property test.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mulrw {

using BigInt = boost::multiprecision::cpp_int;

enum class Kind : std::uint8_t {
  Const,
  Var,
  AndProduct,
  SNode,
  CNode,
  Sum,
  Gate,
  Bitp,
};

enum class GateOp : std::uint8_t { Not, And, Or, Xor };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// One addend of a summation list: coefficient times term.
struct SumEntry {
  std::int64_t coeff;
  TermPtr term;
};

// Strictly sorted by term order on the term component, no zero coefficients,
// no two entries with equal terms.
using SumList = std::vector<SumEntry>;

// Argument lists of s/c nodes, partitioned by addend kind.  Each sub-list is
// sorted; in fully canonical terms s_args is empty.
struct SCArgs {
  SumList s_args;   // SNode addends
  SumList pp_args;  // AndProduct / Var / Const addends
  SumList c_args;   // CNode addends
};

struct Term {
  Kind kind;
  GateOp op = GateOp::Not;         // Gate only
  std::uint64_t hash = 0;          // 0 when hashing is disabled
  std::string name;                // Var
  int index = 0;                   // Var bit index
  BigInt value;                    // Const
  std::vector<TermPtr> children;   // Gate operands, AndProduct literals, Bitp inner
  SCArgs args;                     // SNode / CNode
  SumList sum;                     // Sum
};

// ---------------------------------------------------------------------------
// Construction.  All terms are built through a TermBuilder so the engine's
// hashing switch applies uniformly; when hashing is off every stored hash is
// forced to 0 and comparisons always descend structurally.

std::uint64_t combine_hash(std::uint64_t seed, std::uint64_t v);
std::uint64_t hash_bytes(const void* data, std::size_t len);

class TermBuilder {
 public:
  explicit TermBuilder(bool hashing = true) : hashing_(hashing) {}

  bool hashing() const { return hashing_; }

  TermPtr var(std::string name, int index) const;
  TermPtr constant(BigInt v) const;
  TermPtr gate(GateOp op, std::vector<TermPtr> children) const;
  // Literals are sorted and deduplicated (x*x = x for bits); all must be Vars.
  TermPtr and_product(std::vector<TermPtr> literals) const;
  TermPtr snode(SCArgs args) const;
  TermPtr cnode(SCArgs args) const;
  TermPtr sum_term(SumList entries) const;
  TermPtr bitp(TermPtr inner) const;

 private:
  std::uint64_t finish(std::uint64_t h) const { return hashing_ ? h : 0; }
  bool hashing_;
};

// Recompute the hash a builder would store for this node from its children
// (used by validity checks; independent of the stored value).
std::uint64_t recompute_hash(const Term& t);

// ---------------------------------------------------------------------------
// Total order.

// Counters for the hash fast path; reset before an instrumented run.
struct CompareCounters {
  unsigned long long total = 0;            // unequal-term comparisons
  unsigned long long hash_fast_path = 0;   // resolved by hash alone
  unsigned long long structural = 0;       // needed structural descent
};
CompareCounters& compare_counters();

// Returns <0, 0, >0.  EQ iff structurally identical.  Terms with different
// hashes order by hash without descending.
int term_compare(const Term& a, const Term& b);
inline int term_compare(const TermPtr& a, const TermPtr& b) {
  return term_compare(*a, *b);
}
inline bool term_equal(const TermPtr& a, const TermPtr& b) {
  return term_compare(*a, *b) == 0;
}

bool sorted_and_unique(const SumList& l);

// ---------------------------------------------------------------------------
// Evaluation (Def. of s and c: s(x) = x mod 2, c(x) = floor(x/2), both with
// floor semantics so 2*c(x) + s(x) = x holds for negative x too).

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using EvalEnv = std::map<std::pair<std::string, int>, BigInt>;

BigInt floor_mod2(const BigInt& x);
BigInt floor_div2(const BigInt& x);

BigInt eval_term(const TermPtr& t, const EvalEnv& env);
BigInt eval_sum(const SumList& l, const EvalEnv& env);

// ---------------------------------------------------------------------------
// Debug text syntax, S-expression style.  Round-trips through parse_term for
// test fixtures and the CLI dump command.

std::string term_to_string(const TermPtr& t);
std::string sum_to_string(const SumList& l);

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

TermPtr parse_term(const std::string& text, const TermBuilder& b);

// Helpers shared across modules.
bool is_const(const Term& t, int v);
// A term whose value is known to lie in {0,1} by its shape alone: Bitp
// wrappers, 1-bit Vars, Const 0/1, AndProducts, and s nodes.
bool shape_certified_bit(const Term& t);
// Strip a Bitp wrapper if present.
const TermPtr& strip_bitp(const TermPtr& t);

}  // namespace mulrw
