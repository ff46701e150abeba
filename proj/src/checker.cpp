#include "mulrw/checker.hpp"

#include <chrono>
#include <random>
#include <sstream>
#include <unordered_map>

namespace mulrw {

namespace {

struct PtrPairHash {
  std::size_t operator()(const std::pair<const Term*, const Term*>& p) const {
    return std::hash<const Term*>()(p.first) * 0x9e3779b97f4a7c15ull ^
           std::hash<const Term*>()(p.second);
  }
};

using EqMemo =
    std::unordered_map<std::pair<const Term*, const Term*>, bool, PtrPairHash>;

// Structural equality memoized on node-pointer pairs: the design and spec
// sides are independently built DAGs with heavy internal sharing, so the
// plain recursive compare would revisit shared subterms exponentially often.
bool memo_equal(const TermPtr& a, const TermPtr& b, EqMemo& memo);

bool memo_equal_sum(const SumList& x, const SumList& y, EqMemo& memo) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i].coeff != y[i].coeff || !memo_equal(x[i].term, y[i].term, memo))
      return false;
  return true;
}

bool memo_equal(const TermPtr& a, const TermPtr& b, EqMemo& memo) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  if (a->hash != b->hash) return false;  // both 0 when hashing is off
  auto key = std::make_pair(a.get(), b.get());
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  bool eq = true;
  switch (a->kind) {
    case Kind::Const:
      eq = a->value == b->value;
      break;
    case Kind::Var:
      eq = a->index == b->index && a->name == b->name;
      break;
    case Kind::Gate:
      eq = a->op == b->op;
      [[fallthrough]];
    case Kind::AndProduct:
    case Kind::Bitp:
      if (eq) {
        eq = a->children.size() == b->children.size();
        for (std::size_t i = 0; eq && i < a->children.size(); ++i)
          eq = memo_equal(a->children[i], b->children[i], memo);
      }
      break;
    case Kind::SNode:
    case Kind::CNode:
      eq = memo_equal_sum(a->args.s_args, b->args.s_args, memo) &&
           memo_equal_sum(a->args.pp_args, b->args.pp_args, memo) &&
           memo_equal_sum(a->args.c_args, b->args.c_args, memo);
      break;
    case Kind::Sum:
      eq = memo_equal_sum(a->sum, b->sum, memo);
      break;
  }
  memo.emplace(key, eq);
  return eq;
}

struct Interface {
  const Port* a = nullptr;
  const Port* b = nullptr;
  const Port* acc = nullptr;
  const Port* out = nullptr;
};

// Validate the top module against the descriptor; empty message on success.
std::string check_interface(const ModuleDef& top, const SpecDescriptor& d,
                            Interface& io) {
  const int outw = spec_out_width(d);
  for (const auto& p : top.inputs) {
    if (p.name == "a") io.a = &p;
    else if (p.name == "b") io.b = &p;
    else if (p.name == "acc") io.acc = &p;
    else return "unexpected top-level input port '" + p.name + "'";
  }
  if (!io.a || io.a->width != d.n)
    return "top module needs input 'a' of width " + std::to_string(d.n);
  if (!io.b || io.b->width != d.m)
    return "top module needs input 'b' of width " + std::to_string(d.m);
  if (d.op == SpecOp::Mac) {
    if (!io.acc || io.acc->width != outw)
      return "top module needs input 'acc' of width " + std::to_string(outw);
  } else if (io.acc) {
    return "unexpected 'acc' port on a pure multiplier";
  }
  if (top.outputs.size() != 1)
    return "top module must have exactly one output port";
  io.out = &top.outputs[0];
  if (io.out->width != outw)
    return "top output width " + std::to_string(io.out->width) +
           " does not match spec width " + std::to_string(outw);
  return "";
}

BigInt design_value(const Simulator& sim, const ModuleDef& top,
                    const std::map<std::string, BigInt>& inputs) {
  auto out = sim.run_top(inputs);
  return out.at(top.outputs[0].name);
}

std::optional<Counterexample> search_cex(const Netlist& n,
                                         const SpecDescriptor& d,
                                         const VerifyOptions& o) {
  const ModuleDef& top = n.top_module();
  Simulator sim(n);
  const int outw = spec_out_width(d);
  std::vector<const Port*> ports;
  int total_bits = 0;
  for (const auto& p : top.inputs) {
    ports.push_back(&p);
    total_bits += p.width;
  }

  auto check = [&](const std::map<std::string, BigInt>& in)
      -> std::optional<Counterexample> {
    BigInt got = design_value(sim, top, in);
    BigInt want = eval_spec_integer(d, in.at("a"), in.at("b"),
                                    d.op == SpecOp::Mac ? in.at("acc") : 0);
    if (got != want) return Counterexample{in, got, want};
    return std::nullopt;
  };

  if (total_bits <= o.cex_exhaustive_max_bits) {
    for (unsigned long long v = 0; v < (1ull << total_bits); ++v) {
      std::map<std::string, BigInt> in;
      int pos = 0;
      for (const Port* p : ports) {
        in[p->name] = (v >> pos) & ((1ull << p->width) - 1);
        pos += p->width;
      }
      if (auto cex = check(in)) return cex;
    }
    return std::nullopt;
  }

  std::mt19937_64 rng(o.seed);
  for (unsigned long long i = 0; i < o.cex_budget; ++i) {
    std::map<std::string, BigInt> in;
    for (const Port* p : ports) {
      BigInt v = 0;
      for (int k = 0; k < p->width; k += 32)
        v |= BigInt(static_cast<std::uint32_t>(rng())) << k;
      BigInt mod = BigInt(1) << p->width;
      in[p->name] = v % mod;
    }
    if (auto cex = check(in)) return cex;
  }
  (void)outw;
  return std::nullopt;
}

}  // namespace

BigInt simulate_design(const Netlist& n, const std::map<std::string, BigInt>& inputs) {
  Simulator sim(n);
  const ModuleDef& top = n.top_module();
  if (top.outputs.size() != 1)
    throw SimError("top module must have exactly one output port");
  return design_value(sim, top, inputs);
}

VerifyReport verify(const Netlist& n, const SpecDescriptor& d,
                    const VerifyOptions& o) {
  VerifyReport r;
  auto t0 = std::chrono::steady_clock::now();
  auto finish = [&]() -> VerifyReport& {
    r.stats.elapsed_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return r;
  };

  Interface io;
  if (std::string err = check_interface(n.top_module(), d, io); !err.empty())
    throw NetlistError(NetlistErrorCode::WidthMismatch, err);

  compare_counters() = {};
  bitp_counters() = {};

  EngineOptions eo;
  eo.hashing = o.hashing;
  eo.exhaustive_limit = o.exhaustive_limit;
  eo.audit = o.audit;
  Engine eng(n, eo);

  std::vector<TermPtr> design, spec;
  try {
    auto raw = eng.sym_run();
    design = eng.canonical_outputs(raw);
    spec = build_spec(d, eng.rewriter());
  } catch (const std::runtime_error& e) {
    // The design could not be brought into canonical form (e.g. a gate over
    // an adder output).  That alone proves nothing either way, so fall back
    // to the concrete counterexample search before giving up.
    r.message = std::string("symbolic simulation failed: ") + e.what();
    r.stats.node_visits = eng.node_visits();
    r.stats.rewrite = eng.rewriter().stats();
    r.stats.bitp = bitp_counters();
    r.stats.compare = compare_counters();
    if (auto cex = search_cex(n, d, o);
        cex && simulate_design(n, cex->inputs) == cex->got) {
      r.status = VerifyStatus::Refuted;
      r.cex = std::move(cex);
    } else {
      r.status = VerifyStatus::Unknown;
      r.message += "; no concrete counterexample found within budget";
    }
    return finish();
  }

  EqMemo memo;
  r.bit_ok.resize(design.size());
  for (std::size_t i = 0; i < design.size(); ++i) {
    r.bit_ok[i] = memo_equal(design[i], spec[i], memo);
    if (!r.bit_ok[i]) ++r.stats.mismatched_bits;
  }
  r.stats.node_visits = eng.node_visits();
  r.stats.rewrite = eng.rewriter().stats();
  r.stats.bitp = bitp_counters();
  r.stats.compare = compare_counters();

  if (r.stats.mismatched_bits == 0) {
    r.status = VerifyStatus::Proved;
    return finish();
  }

  std::ostringstream msg;
  msg << r.stats.mismatched_bits << " output bit(s) differ from the spec form;"
      << " first mismatch at bit ";
  for (std::size_t i = 0; i < r.bit_ok.size(); ++i)
    if (!r.bit_ok[i]) {
      msg << i;
      break;
    }

  if (auto cex = search_cex(n, d, o)) {
    // Replay once through an independent simulation to rule out a search bug.
    BigInt replay = simulate_design(n, cex->inputs);
    if (replay == cex->got) {
      r.status = VerifyStatus::Refuted;
      r.cex = std::move(cex);
      r.message = msg.str();
      return finish();
    }
  }
  r.status = VerifyStatus::Unknown;
  msg << "; no concrete counterexample found within budget";
  r.message = msg.str();
  return finish();
}

}  // namespace mulrw
