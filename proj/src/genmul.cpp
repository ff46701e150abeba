#include "mulrw/genmul.hpp"

#include <algorithm>
#include <random>

namespace mulrw {

namespace {

// ---------------------------------------------------------------------------
// Adder module library.

ModuleDef make_ha() {
  ModuleDef m;
  m.name = "ha";
  m.inputs = {{"a", 1}, {"b", 1}};
  m.outputs = {{"s", 1}, {"c", 1}};
  m.nodes.push_back({NodeKind::Gate, GateOp::Xor, {"a", "b"}, {"s"}, "", {}});
  m.nodes.push_back({NodeKind::Gate, GateOp::And, {"a", "b"}, {"c"}, "", {}});
  m.adder_hint = AdderHint{"HA", {}};
  return m;
}

ModuleDef make_fa() {
  ModuleDef m;
  m.name = "fa";
  m.inputs = {{"a", 1}, {"b", 1}, {"cin", 1}};
  m.outputs = {{"s", 1}, {"c", 1}};
  m.nodes.push_back({NodeKind::Gate, GateOp::Xor, {"a", "b"}, {"t"}, "", {}});
  m.nodes.push_back({NodeKind::Gate, GateOp::Xor, {"t", "cin"}, {"s"}, "", {}});
  m.nodes.push_back({NodeKind::Gate, GateOp::And, {"a", "b"}, {"g1"}, "", {}});
  m.nodes.push_back({NodeKind::Gate, GateOp::And, {"t", "cin"}, {"g2"}, "", {}});
  m.nodes.push_back({NodeKind::Gate, GateOp::Or, {"g1", "g2"}, {"c"}, "", {}});
  m.adder_hint = AdderHint{"FA", {}};
  return m;
}

// Truncating ripple-carry adder: s = (a + b) mod 2^w; final carry unused.
ModuleDef make_rca(int w) {
  ModuleDef m;
  m.name = "rca_" + std::to_string(w);
  m.inputs = {{"a", w}, {"b", w}};
  m.outputs = {{"s", w}};
  auto abit = [&](int i) { return bit_name("a", w, i); };
  auto bbit = [&](int i) { return bit_name("b", w, i); };
  auto sbit = [&](int i) { return bit_name("s", w, i); };
  std::string carry;
  for (int i = 0; i < w; ++i) {
    std::string cout = "c" + std::to_string(i);
    Node nd;
    nd.kind = NodeKind::Inst;
    if (i == 0) {
      nd.module = "ha";
      nd.conn = {{"a", {abit(0)}}, {"b", {bbit(0)}}, {"s", {sbit(0)}}, {"c", {cout}}};
    } else {
      nd.module = "fa";
      nd.conn = {{"a", {abit(i)}},
                 {"b", {bbit(i)}},
                 {"cin", {carry}},
                 {"s", {sbit(i)}},
                 {"c", {cout}}};
    }
    m.nodes.push_back(std::move(nd));
    carry = cout;
  }
  m.adder_hint = AdderHint{"RCA", {}};
  return m;
}

// ---------------------------------------------------------------------------
// Top-module gate builder.

struct TopBuilder {
  ModuleDef& m;
  int counter = 0;
  std::string gnd_, vdd_;

  std::string fresh(const std::string& prefix) {
    return prefix + "_" + std::to_string(counter++);
  }
  std::string gate(GateOp op, std::vector<std::string> ins,
                   const std::string& prefix = "w") {
    std::string out = fresh(prefix);
    m.nodes.push_back({NodeKind::Gate, op, std::move(ins), {out}, "", {}});
    return out;
  }
  std::string gnd() {
    if (gnd_.empty()) {
      gnd_ = "gnd";
      m.nodes.push_back({NodeKind::Const0, GateOp::And, {}, {gnd_}, "", {}});
    }
    return gnd_;
  }
  std::string vdd() {
    if (vdd_.empty()) {
      vdd_ = "vdd";
      m.nodes.push_back({NodeKind::Const1, GateOp::And, {}, {vdd_}, "", {}});
    }
    return vdd_;
  }
  void inst(const std::string& module,
            std::vector<std::pair<std::string, std::vector<std::string>>> conn) {
    Node nd;
    nd.kind = NodeKind::Inst;
    nd.module = module;
    nd.conn = std::move(conn);
    m.nodes.push_back(std::move(nd));
  }
};

using Row = std::vector<std::pair<int, std::string>>;

BigInt pow2_mod(int k, int outw) {
  return k >= outw ? BigInt(0) : BigInt(1) << k;
}

// Simple (AND-matrix) partial products; signed operands use the
// two's-complement expansion with negated mixed-sign products plus a
// compensation constant.
std::vector<Row> simple_rows(const GenConfig& cfg, int outw, TopBuilder& tb,
                             BigInt& comp) {
  std::vector<Row> rows;
  for (int j = 0; j < cfg.m; ++j) {
    Row row;
    for (int i = 0; i < cfg.n; ++i) {
      int col = i + j;
      if (col >= outw) continue;
      std::string w =
          tb.gate(GateOp::And,
                  {bit_name("a", cfg.n, i), bit_name("b", cfg.m, j)}, "pp");
      bool neg = cfg.is_signed && ((i == cfg.n - 1) != (j == cfg.m - 1));
      if (neg) {
        w = tb.gate(GateOp::Not, {w}, "np");
        comp -= pow2_mod(col, outw);  // NOT contributes (1 - ab): cancel the +1
      }
      row.push_back({col, w});
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

// Booth radix-4 rows.  Row i covers digit d_i = b[2i-1] + b[2i] - 2*b[2i+1]
// over the (sign- or zero-extended) multiplicand; negation is realized as
// bitwise complement + 1 (the +1 lands in a correction row at column 2i) and
// the top bit is replaced by its complement with a constant offset, so each
// row is exact without data-dependent sign extension.
std::vector<Row> booth_rows(const GenConfig& cfg, int outw, TopBuilder& tb,
                            BigInt& comp) {
  const int n = cfg.n, m = cfg.m;
  const int W = n + 2;
  const int digits = cfg.is_signed ? (m + 1) / 2 : m / 2 + 1;

  auto ahat = [&](int j) -> std::string {
    if (j < 0) return tb.gnd();
    if (j < n) return bit_name("a", n, j);
    return cfg.is_signed ? bit_name("a", n, n - 1) : tb.gnd();
  };
  auto bhat = [&](int l) -> std::string {
    if (l < 0) return tb.gnd();
    if (l < m) return bit_name("b", m, l);
    return cfg.is_signed ? bit_name("b", m, m - 1) : tb.gnd();
  };

  std::vector<Row> rows;
  Row corrections;
  for (int i = 0; i < digits; ++i) {
    const int base = 2 * i;
    if (base >= outw) break;
    std::string one = tb.gate(GateOp::Xor, {bhat(2 * i), bhat(2 * i - 1)}, "one");
    std::string two = tb.gate(
        GateOp::And,
        {tb.gate(GateOp::Xor, {bhat(2 * i + 1), bhat(2 * i)}, "tw"),
         tb.gate(GateOp::Not, {one}, "no")},
        "two");
    std::string neg = bhat(2 * i + 1);

    Row row;
    std::string q_top;
    for (int j = 0; j < W && base + j < outw; ++j) {
      std::string p = tb.gate(
          GateOp::Or,
          {tb.gate(GateOp::And, {one, ahat(j)}, "p1"),
           tb.gate(GateOp::And, {two, ahat(j - 1)}, "p2")},
          "p");
      std::string q = tb.gate(GateOp::Xor, {p, neg}, "q");
      row.push_back({base + j, q});
      if (j == W - 1) q_top = q;
    }
    if (base + W < outw) {
      row.push_back({base + W, tb.gate(GateOp::Not, {q_top}, "ext")});
      comp -= pow2_mod(base + W, outw);
    }
    rows.push_back(std::move(row));
    corrections.push_back({base, neg});
  }
  rows.push_back(std::move(corrections));
  return rows;
}

std::string rca_name(int w) { return "rca_" + std::to_string(w); }

std::vector<std::string> out_wires(int outw) {
  std::vector<std::string> v;
  for (int k = 0; k < outw; ++k) v.push_back(bit_name("out", outw, k));
  return v;
}

std::vector<std::string> pad_row(const Row& row, int outw, TopBuilder& tb) {
  std::vector<std::string> v(outw);
  for (auto& [col, w] : row) v[col] = w;
  for (auto& w : v)
    if (w.empty()) w = tb.gnd();
  return v;
}

// Row-by-row ripple accumulation: a chain of truncating RCAs.
void reduce_array(std::vector<Row> rows, int outw, TopBuilder& tb,
                  bool& need_rca) {
  if (rows.empty()) rows.push_back({});
  if (rows.size() == 1) rows.push_back({});  // add zero so the RCA drives out
  std::vector<std::string> acc = pad_row(rows[0], outw, tb);
  need_rca = true;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    std::vector<std::string> addend = pad_row(rows[r], outw, tb);
    std::vector<std::string> next;
    if (r + 1 == rows.size()) {
      next = out_wires(outw);
    } else {
      for (int k = 0; k < outw; ++k) next.push_back(tb.fresh("acc"));
    }
    tb.inst(rca_name(outw), {{"a", acc}, {"b", addend}, {"s", next}});
    acc = std::move(next);
  }
}

// Tree compression down to two rows, then one truncating RCA.
void reduce_tree(const std::vector<Row>& rows, int outw, bool dadda,
                 TopBuilder& tb, bool& need_ha, bool& need_fa, bool& need_rca) {
  std::vector<std::vector<std::string>> stack(outw);
  for (const Row& row : rows)
    for (auto& [col, w] : row) stack[col].push_back(w);

  auto height = [&] {
    std::size_t h = 0;
    for (auto& s : stack) h = std::max(h, s.size());
    return h;
  };

  auto emit_fa = [&](const std::string& x, const std::string& y,
                     const std::string& z) {
    std::string s = tb.fresh("fs"), c = tb.fresh("fc");
    tb.inst("fa", {{"a", {x}}, {"b", {y}}, {"cin", {z}}, {"s", {s}}, {"c", {c}}});
    need_fa = true;
    return std::make_pair(s, c);
  };
  auto emit_ha = [&](const std::string& x, const std::string& y) {
    std::string s = tb.fresh("hs"), c = tb.fresh("hc");
    tb.inst("ha", {{"a", {x}}, {"b", {y}}, {"s", {s}}, {"c", {c}}});
    need_ha = true;
    return std::make_pair(s, c);
  };

  if (dadda) {
    // Height targets 2, 3, 4, 6, 9, ... ; reduce each column to the target,
    // carries feed the next column within the same pass.
    std::vector<std::size_t> targets{2};
    while (targets.back() < height())
      targets.push_back(targets.back() * 3 / 2);
    for (std::size_t ti = targets.size(); ti-- > 0;) {
      std::size_t d = targets[ti];
      if (height() <= d) continue;
      for (int k = 0; k < outw; ++k) {
        auto& col = stack[k];
        while (col.size() > d) {
          if (col.size() == d + 1) {
            auto [s, c] = emit_ha(col[0], col[1]);
            col.erase(col.begin(), col.begin() + 2);
            col.push_back(s);
            if (k + 1 < outw) stack[k + 1].push_back(c);
          } else {
            auto [s, c] = emit_fa(col[0], col[1], col[2]);
            col.erase(col.begin(), col.begin() + 3);
            col.push_back(s);
            if (k + 1 < outw) stack[k + 1].push_back(c);
          }
        }
      }
    }
  } else {
    // Wallace: per stage, every group of 3 -> FA, remaining pair -> HA.
    while (height() > 2) {
      std::vector<std::vector<std::string>> next(outw);
      for (int k = 0; k < outw; ++k) {
        auto& col = stack[k];
        std::size_t i = 0;
        for (; i + 3 <= col.size(); i += 3) {
          auto [s, c] = emit_fa(col[i], col[i + 1], col[i + 2]);
          next[k].push_back(s);
          if (k + 1 < outw) next[k + 1].push_back(c);
        }
        if (col.size() - i == 2) {
          auto [s, c] = emit_ha(col[i], col[i + 1]);
          next[k].push_back(s);
          if (k + 1 < outw) next[k + 1].push_back(c);
        } else if (col.size() - i == 1) {
          next[k].push_back(col[i]);
        }
      }
      stack = std::move(next);
    }
  }

  std::vector<std::string> a(outw), b(outw);
  for (int k = 0; k < outw; ++k) {
    a[k] = stack[k].size() > 0 ? stack[k][0] : tb.gnd();
    b[k] = stack[k].size() > 1 ? stack[k][1] : tb.gnd();
  }
  tb.inst(rca_name(outw), {{"a", a}, {"b", b}, {"s", out_wires(outw)}});
  need_rca = true;
}

}  // namespace

SpecDescriptor spec_of(const GenConfig& cfg) {
  SpecDescriptor d;
  d.op = cfg.op;
  d.n = cfg.n;
  d.m = cfg.m;
  d.a_signed = d.b_signed = cfg.is_signed;
  d.out_width = cfg.out_width;
  return d;
}

Netlist generate(const GenConfig& cfg) {
  if (cfg.n < 1 || cfg.m < 1) throw GenError("operand widths must be >= 1");
  if (cfg.pp == PPGen::Booth2 && cfg.m < 2)
    throw GenError("Booth-2 recoding needs m >= 2");
  const int outw = spec_out_width(spec_of(cfg));

  Netlist nl;
  nl.top = "top";
  ModuleDef top;
  top.name = "top";
  top.inputs = {{"a", cfg.n}, {"b", cfg.m}};
  if (cfg.op == SpecOp::Mac) top.inputs.push_back({"acc", outw});
  top.outputs = {{"out", outw}};
  TopBuilder tb{top};

  BigInt comp = 0;
  std::vector<Row> rows = cfg.pp == PPGen::Booth2
                              ? booth_rows(cfg, outw, tb, comp)
                              : simple_rows(cfg, outw, tb, comp);
  if (cfg.op == SpecOp::Mac) {
    Row accrow;
    for (int k = 0; k < outw; ++k) accrow.push_back({k, bit_name("acc", outw, k)});
    rows.push_back(std::move(accrow));
  }
  // Compensation constant for negated partial products / Booth extension.
  BigInt mod = BigInt(1) << outw;
  comp = ((comp % mod) + mod) % mod;
  Row constants;
  for (int k = 0; k < outw; ++k)
    if (((comp >> k) & 1) != 0) constants.push_back({k, tb.vdd()});
  if (!constants.empty()) rows.push_back(std::move(constants));
  rows.erase(std::remove_if(rows.begin(), rows.end(),
                            [](const Row& r) { return r.empty(); }),
             rows.end());

  bool need_ha = false, need_fa = false, need_rca = false;
  if (cfg.arch == Arch::Array)
    reduce_array(std::move(rows), outw, tb, need_rca);
  else
    reduce_tree(rows, outw, cfg.arch == Arch::Dadda, tb, need_ha, need_fa,
                need_rca);

  nl.modules["top"] = std::move(top);
  if (need_rca) {
    nl.modules[rca_name(outw)] = make_rca(outw);
    need_ha = need_fa = true;  // RCA cells
    if (outw < 2) need_fa = false;
  }
  if (need_ha) nl.modules["ha"] = make_ha();
  if (need_fa) nl.modules["fa"] = make_fa();
  validate_netlist(nl);
  return nl;
}

// ---------------------------------------------------------------------------
// Mutation.

std::pair<Netlist, Mutation> mutate(const Netlist& n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<std::string, std::size_t>> gates;
  for (const auto& [name, m] : n.modules)
    for (std::size_t i = 0; i < m.nodes.size(); ++i)
      if (m.nodes[i].kind == NodeKind::Gate) gates.push_back({name, i});
  if (gates.empty()) throw GenError("netlist has no gates to mutate");

  auto pick = [&](std::size_t k) { return rng() % k; };

  Netlist out = n;
  Mutation info;
  auto& [mod_name, idx] = gates[pick(gates.size())];
  ModuleDef& m = out.modules.at(mod_name);
  Node& nd = m.nodes[idx];
  info.module = mod_name;
  info.node = idx;

  int kind = static_cast<int>(pick(nd.op == GateOp::Not ? 2 : 3));
  if (nd.op == GateOp::Not) ++kind;  // no op-swap for NOT

  auto op_name = [](GateOp op) {
    switch (op) {
      case GateOp::Not: return "NOT";
      case GateOp::And: return "AND";
      case GateOp::Or: return "OR";
      case GateOp::Xor: return "XOR";
    }
    return "?";
  };

  if (kind == 0) {
    static const GateOp ops[] = {GateOp::And, GateOp::Or, GateOp::Xor};
    GateOp nw = nd.op;
    while (nw == nd.op) nw = ops[pick(3)];
    info.description = mod_name + ":" + std::to_string(idx) + ": op " +
                       op_name(nd.op) + "->" + op_name(nw);
    nd.op = nw;
  } else if (kind == 1) {
    // Rewire one input to a wire available earlier in topological order
    // (keeps the module acyclic).
    std::vector<std::string> candidates = m.input_bits();
    for (std::size_t pos : topo_order(m, n)) {
      if (pos == idx) break;
      for (const auto& w : node_outputs(n, m.nodes[pos])) candidates.push_back(w);
    }
    std::size_t slot = pick(nd.ins.size());
    std::string old = nd.ins[slot];
    candidates.erase(std::remove(candidates.begin(), candidates.end(), old),
                     candidates.end());
    if (candidates.empty()) {
      // Fall back to stuck-at when no alternative wire exists.
      kind = 2;
    } else {
      nd.ins[slot] = candidates[pick(candidates.size())];
      info.description = mod_name + ":" + std::to_string(idx) + ": input " +
                         std::to_string(slot) + " rewired " + old + "->" +
                         nd.ins[slot];
    }
  }
  if (kind == 2) {
    bool one = pick(2) != 0;
    info.description = mod_name + ":" + std::to_string(idx) + ": stuck-at-" +
                       (one ? "1" : "0");
    nd.kind = one ? NodeKind::Const1 : NodeKind::Const0;
    nd.ins.clear();
  }
  validate_netlist(out);
  return {std::move(out), std::move(info)};
}

std::string to_string(Arch a) {
  switch (a) {
    case Arch::Array: return "ARRAY";
    case Arch::Wallace: return "WALLACE";
    case Arch::Dadda: return "DADDA";
  }
  return "?";
}
std::string to_string(PPGen p) {
  return p == PPGen::Simple ? "SIMPLE" : "BOOTH2";
}
Arch arch_from_string(const std::string& s) {
  if (s == "ARRAY") return Arch::Array;
  if (s == "WALLACE") return Arch::Wallace;
  if (s == "DADDA") return Arch::Dadda;
  throw GenError("unknown architecture: " + s);
}
PPGen pp_from_string(const std::string& s) {
  if (s == "SIMPLE") return PPGen::Simple;
  if (s == "BOOTH2") return PPGen::Booth2;
  throw GenError("unknown partial-product scheme: " + s);
}

}  // namespace mulrw
