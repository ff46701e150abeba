#include <doctest.h>

#include <functional>

#include "mulrw/specgen.hpp"

using namespace mulrw;

namespace {

SpecDescriptor desc(int n, int m, bool sgn = false, SpecOp op = SpecOp::Mult,
                    int outw = 0) {
  SpecDescriptor d;
  d.op = op;
  d.n = n;
  d.m = m;
  d.a_signed = d.b_signed = sgn;
  d.out_width = outw;
  return d;
}

// Recombine spec bit terms under a concrete assignment.
BigInt eval_bits(const std::vector<TermPtr>& bits, const EvalEnv& env) {
  BigInt v = 0;
  for (std::size_t k = bits.size(); k-- > 0;) v = v * 2 + eval_term(bits[k], env);
  return v;
}

EvalEnv env_for(const SpecDescriptor& d, unsigned a, unsigned b, unsigned acc = 0) {
  EvalEnv env;
  for (int i = 0; i < d.n; ++i) env[{"a", i}] = (a >> i) & 1;
  for (int j = 0; j < d.m; ++j) env[{"b", j}] = (b >> j) & 1;
  if (d.op == SpecOp::Mac)
    for (int k = 0; k < spec_out_width(d); ++k) env[{"acc", k}] = (acc >> k) & 1;
  return env;
}

void check_exhaustive(const SpecDescriptor& d) {
  RewriteEngine rw;
  auto bits = build_spec(d, rw);
  REQUIRE(int(bits.size()) == spec_out_width(d));
  int accw = d.op == SpecOp::Mac ? spec_out_width(d) : 0;
  for (unsigned a = 0; a < (1u << d.n); ++a)
    for (unsigned b = 0; b < (1u << d.m); ++b)
      for (unsigned acc = 0; acc < (1u << accw); ++acc) {
        BigInt got = eval_bits(bits, env_for(d, a, b, acc));
        BigInt want = eval_spec_integer(d, a, b, acc);
        REQUIRE(got == want);
      }
}

}  // namespace

TEST_CASE("integer spec semantics") {
  CHECK(eval_spec_integer(desc(4, 4), 15, 15) == 225);
  // Signed 4x4: 0b1000 = -8, 0b0111 = 7 -> -56 mod 256 = 200.
  CHECK(eval_spec_integer(desc(4, 4, true), 8, 7) == 200);
  // MAC 2x2 with 4-bit accumulator: 3*3 + 15 = 24 mod 16 = 8.
  CHECK(eval_spec_integer(desc(2, 2, false, SpecOp::Mac), 3, 3, 15) == 8);
  // Truncation: out-width below n+m.
  CHECK(eval_spec_integer(desc(4, 4, false, SpecOp::Mult, 4), 15, 15) == 225 % 16);
  // Signed negative * negative.
  CHECK(eval_spec_integer(desc(3, 3, true), 4, 4) == 16);  // (-4)*(-4)
}

TEST_CASE("1x1 spec canonical forms") {
  RewriteEngine rw;
  auto bits = build_spec(desc(1, 1), rw);
  REQUIRE(bits.size() == 2);
  const TermBuilder& b = rw.builder();
  TermPtr ab = b.and_product({b.var("a", 0), b.var("b", 0)});
  CHECK(term_equal(bits[0], rw.mk_s({{1, ab}})));
  // The carry out of a single-bit column is 0, so the top bit collapses.
  CHECK(is_const(*bits[1], 0));
}

TEST_CASE("spec columns: unsigned entries are +1, sign cross terms -1") {
  RewriteEngine rw;
  auto cols_u = spec_columns(desc(2, 2), rw);
  for (const auto& col : cols_u)
    for (const auto& e : col) CHECK(e.coeff == 1);

  auto cols_s = spec_columns(desc(2, 2, true), rw);
  // Column 2 holds a1*b1 (both sign bits: +1) plus nothing else; the -1
  // entries sit where exactly one sign bit contributes (column 1+1=2? no:
  // a1*b0 and a0*b1 in column 1).
  bool saw_minus = false, saw_plus = false;
  for (const auto& e : cols_s[1]) {
    CHECK(e.coeff == -1);
    saw_minus = true;
  }
  for (const auto& e : cols_s[2]) {
    CHECK(e.coeff == 1);  // a1b1: both signs negate, product positive
    saw_plus = true;
  }
  CHECK(saw_minus);
  CHECK(saw_plus);
}

TEST_CASE("exhaustive spec-term / integer agreement, <= 12 input bits") {
  check_exhaustive(desc(3, 3));
  check_exhaustive(desc(2, 2, true));
  check_exhaustive(desc(4, 3, true));
  check_exhaustive(desc(5, 5));
  check_exhaustive(desc(6, 6, true));
  check_exhaustive(desc(2, 2, false, SpecOp::Mac));        // 4+4 acc bits
  check_exhaustive(desc(2, 2, true, SpecOp::Mac));
  check_exhaustive(desc(3, 3, false, SpecOp::Mult, 3));    // truncated
  check_exhaustive(desc(4, 4, true, SpecOp::Mult, 5));
}

TEST_CASE("spec terms are fully canonical") {
  RewriteEngine rw;
  std::function<void(const TermPtr&)> walk = [&](const TermPtr& t) {
    if (t->kind == Kind::SNode || t->kind == Kind::CNode) {
      CHECK(t->args.s_args.empty());
      CHECK(sorted_and_unique(t->args.pp_args));
      CHECK(sorted_and_unique(t->args.c_args));
      CHECK(t->hash == recompute_hash(*t));
    }
    CHECK(t->kind != Kind::Gate);
    for (const auto& c : t->children) walk(c);
    for (const auto* l : {&t->args.pp_args, &t->args.c_args})
      for (const auto& e : *l) walk(e.term);
    for (const auto& e : t->sum) walk(e.term);
  };
  for (const auto& d : {desc(6, 6), desc(6, 6, true), desc(4, 4, true, SpecOp::Mac)}) {
    auto bits = build_spec(d, rw);
    for (const auto& t : bits) {
      CHECK((t->kind == Kind::Bitp || t->kind == Kind::Const));
      walk(t);
    }
  }
}
