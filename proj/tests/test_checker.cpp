#include <doctest.h>

#include "fixtures.hpp"
#include "mulrw/checker.hpp"
#include "mulrw/genmul.hpp"

using namespace mulrw;

namespace {

GenConfig cfg4x4() {
  GenConfig cfg;
  cfg.arch = Arch::Wallace;
  cfg.pp = PPGen::Simple;
  cfg.n = cfg.m = 4;
  return cfg;
}

// Exhaustive functional-equivalence classification of a small design.
bool equivalent_exhaustive(const Netlist& nl, const SpecDescriptor& d) {
  for (unsigned a = 0; a < (1u << d.n); ++a)
    for (unsigned b = 0; b < (1u << d.m); ++b) {
      std::map<std::string, BigInt> in{{"a", a}, {"b", b}};
      if (d.op == SpecOp::Mac) in["acc"] = 0;
      if (simulate_design(nl, in) != eval_spec_integer(d, a, b, 0)) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("correct 4x4 design is PROVED and oracle-confirmed on all 256 inputs") {
  Netlist nl = generate(cfg4x4());
  SpecDescriptor d = spec_of(cfg4x4());
  VerifyReport r = verify(nl, d);
  CHECK(r.status == VerifyStatus::Proved);
  CHECK(!r.cex.has_value());
  for (bool ok : r.bit_ok) CHECK(ok);
  CHECK(r.stats.mismatched_bits == 0);
  CHECK(equivalent_exhaustive(nl, d));
}

TEST_CASE("single-gate mutant is REFUTED with a replayable counterexample") {
  Netlist nl = generate(cfg4x4());
  SpecDescriptor d = spec_of(cfg4x4());
  // Find a seed whose mutant is functionally inequivalent (most are).
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto [mut, info] = mutate(nl, seed);
    if (equivalent_exhaustive(mut, d)) continue;
    VerifyReport r = verify(mut, d);
    REQUIRE(r.status == VerifyStatus::Refuted);
    REQUIRE(r.cex.has_value());
    // Replay: the counterexample really separates design from spec.
    BigInt got = simulate_design(mut, r.cex->inputs);
    CHECK(got == r.cex->got);
    CHECK(got != r.cex->want);
    CHECK(eval_spec_integer(d, r.cex->inputs.at("a"), r.cex->inputs.at("b")) ==
          r.cex->want);
    return;
  }
  FAIL("no inequivalent mutant found in 50 seeds");
}

TEST_CASE("soundness: equivalence status matches the exhaustive oracle") {
  // Across a batch of seeded mutants, verify() never PROVES an inequivalent
  // design and never REFUTES an equivalent one.
  Netlist nl = generate(cfg4x4());
  SpecDescriptor d = spec_of(cfg4x4());
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    auto [mut, info] = mutate(nl, seed);
    bool equiv = equivalent_exhaustive(mut, d);
    VerifyReport r = verify(mut, d);
    if (equiv) {
      CHECK(r.status != VerifyStatus::Refuted);
    } else {
      CHECK(r.status == VerifyStatus::Refuted);
    }
    ++checked;
  }
  CHECK(checked == 25);
}

TEST_CASE("wrong spec width is a WidthMismatch error") {
  Netlist nl = generate(cfg4x4());
  SpecDescriptor d = spec_of(cfg4x4());
  d.n = 5;  // design port a is 4 bits wide
  try {
    verify(nl, d);
    FAIL("expected WidthMismatch");
  } catch (const NetlistError& e) {
    CHECK(e.code == NetlistErrorCode::WidthMismatch);
  }
}

TEST_CASE("stuck-at-0 output: exhaustive search returns the minimal witness") {
  Netlist nl = parse_netlist(fixtures::kStuckZero);
  SpecDescriptor d;
  d.n = d.m = 1;
  d.out_width = 1;
  VerifyReport r = verify(nl, d);
  REQUIRE(r.status == VerifyStatus::Refuted);
  REQUIRE(r.cex.has_value());
  // out0 = a0*b0, so the only disagreeing input is a=b=1.
  CHECK(r.cex->inputs.at("a") == 1);
  CHECK(r.cex->inputs.at("b") == 1);
  CHECK(r.cex->got == 0);
  CHECK(r.cex->want == 1);
}

TEST_CASE("hashing off: still PROVED, zero hash fast-path hits") {
  Netlist nl = generate(cfg4x4());
  VerifyOptions o;
  o.hashing = false;
  VerifyReport r = verify(nl, spec_of(cfg4x4()), o);
  CHECK(r.status == VerifyStatus::Proved);
  CHECK(r.stats.compare.hash_fast_path == 0);
  CHECK(r.stats.compare.structural == r.stats.compare.total);
}

TEST_CASE("UNKNOWN when the counterexample budget is forced to zero") {
  Netlist nl = generate(cfg4x4());
  SpecDescriptor d = spec_of(cfg4x4());
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto [mut, info] = mutate(nl, seed);
    if (equivalent_exhaustive(mut, d)) continue;
    VerifyOptions o;
    o.cex_exhaustive_max_bits = 0;
    o.cex_budget = 0;
    VerifyReport r = verify(mut, d, o);
    CHECK(r.status == VerifyStatus::Unknown);
    CHECK(!r.cex.has_value());
    return;
  }
  FAIL("no inequivalent mutant found in 50 seeds");
}

TEST_CASE("MAC verification end to end") {
  GenConfig cfg;
  cfg.arch = Arch::Dadda;
  cfg.pp = PPGen::Simple;
  cfg.op = SpecOp::Mac;
  cfg.n = cfg.m = 3;
  Netlist nl = generate(cfg);
  SpecDescriptor d = spec_of(cfg);
  CHECK(verify(nl, d).status == VerifyStatus::Proved);
  // Spot-check the oracle with the accumulator active.
  CHECK(simulate_design(nl, {{"a", 5}, {"b", 6}, {"acc", 17}}) ==
        eval_spec_integer(d, 5, 6, 17));
}

TEST_CASE("verify stats are populated") {
  Netlist nl = generate(cfg4x4());
  VerifyReport r = verify(nl, spec_of(cfg4x4()));
  CHECK(r.stats.node_visits > 0);
  CHECK(r.stats.rewrite.mk_s_calls > 0);
  CHECK(r.stats.rewrite.mk_c_calls > 0);
  CHECK(r.stats.elapsed_sec > 0.0);
  CHECK(r.stats.bitp.rederivations == 0);
}
