#include "mulrw/symsim.hpp"

namespace mulrw {

namespace {

// Structural pre-check for a ripple-carry shape: two equal-width addend
// ports, at most one 1-bit carry-in, output width w or w+1.  Functional
// correctness is established separately.
std::optional<AdderTemplate> vector_shape(const ModuleDef& m) {
  std::vector<const Port*> wide, cin;
  for (const auto& p : m.inputs) (p.width == 1 ? cin : wide).push_back(&p);
  if (wide.size() != 2 || cin.size() > 1) return std::nullopt;
  if (wide[0]->width != wide[1]->width) return std::nullopt;
  const int w = wide[0]->width;
  const int outw = static_cast<int>(m.output_bits().size());
  if (outw != w && outw != w + 1) return std::nullopt;

  AdderTemplate t;
  t.kind = AdderKind::VectorAdder;
  t.width = w;
  int pos = 0;
  for (const auto& p : m.inputs) {
    for (int i = 0; i < p.width; ++i, ++pos) {
      if (&p == wide[0]) t.a_bits.push_back(pos);
      else if (&p == wide[1]) t.b_bits.push_back(pos);
      else t.cin_bit = pos;
    }
  }
  for (int k = 0; k < outw; ++k) t.out_bits.push_back(k);
  return t;
}

}  // namespace

Engine::Engine(const Netlist& n, EngineOptions opts)
    : nl_(&n), opts_(opts), rw_(opts.hashing), sim_(n) {}

const std::vector<std::size_t>& Engine::topo(const ModuleDef& m) {
  auto it = topo_cache_.find(m.name);
  if (it == topo_cache_.end())
    it = topo_cache_.emplace(m.name, topo_order(m, *nl_)).first;
  return it->second;
}

const AdderTemplate* Engine::adder_template(const std::string& module_name) {
  auto it = templates_.find(module_name);
  if (it != templates_.end())
    return it->second ? &*it->second : nullptr;
  // Reserve the slot so recursive lookups during the symbolic fallback see
  // "not an adder" for the module under classification.
  it = templates_.emplace(module_name, std::nullopt).first;

  const ModuleDef& m = nl_->module(module_name);
  std::optional<AdderTemplate> t =
      classify_exhaustive(sim_, m, opts_.exhaustive_limit);

  if (!t && static_cast<int>(m.input_bits().size()) > opts_.exhaustive_limit &&
      (!m.adder_hint || m.adder_hint->kind == "RCA")) {
    // Wide ripple compositions: certify by symbolic simulation.  Run the
    // module body on fresh variables and demand syntactic equality with the
    // vector-adder template's s/c output forms.
    if (auto cand = vector_shape(m)) {
      std::vector<TermPtr> vars;
      int pos = 0;
      for (const auto& p : m.inputs)
        for (int i = 0; i < p.width; ++i, ++pos)
          vars.push_back(rw_.builder().var("$" + p.name, i));
      const bool saved = classifying_;
      classifying_ = true;
      try {
        std::vector<TermPtr> got = run_module(m, vars, "$" + module_name);
        std::vector<TermPtr> want = instantiate_template(*cand, vars, rw_);
        bool ok = got.size() == want.size();
        for (std::size_t i = 0; ok && i < got.size(); ++i)
          ok = term_equal(got[i], want[i]);
        if (ok) t = cand;
      } catch (const RewriteError&) {
      } catch (const UnreliableBitp&) {
      }
      classifying_ = saved;
    }
  }

  it->second = std::move(t);
  return it->second ? &*it->second : nullptr;
}

std::vector<TermPtr> Engine::run_module(const ModuleDef& m,
                                        std::vector<TermPtr> inputs,
                                        const std::string& path) {
  std::vector<std::string> ibits = m.input_bits();
  if (inputs.size() != ibits.size())
    throw SymSimError(m.name + ": expected " + std::to_string(ibits.size()) +
                      " symbolic inputs, got " + std::to_string(inputs.size()));
  std::map<std::string, TermPtr> env;
  for (std::size_t i = 0; i < ibits.size(); ++i)
    env[ibits[i]] = std::move(inputs[i]);

  const TermBuilder& b = rw_.builder();
  for (std::size_t idx : topo(m)) {
    const Node& nd = m.nodes[idx];
    if (!classifying_) {
      ++node_visits_;
      if (opts_.audit) ++visit_counts_[path + ":" + std::to_string(idx)];
    }
    switch (nd.kind) {
      case NodeKind::Const0:
        env[nd.outs.front()] = b.constant(0);
        break;
      case NodeKind::Const1:
        env[nd.outs.front()] = b.constant(1);
        break;
      case NodeKind::Gate: {
        std::vector<TermPtr> ops;
        ops.reserve(nd.ins.size());
        for (const auto& w : nd.ins) ops.push_back(env.at(w));
        SumList poly = rw_.bool_to_arith(b.gate(nd.op, std::move(ops)));
        TermPtr v;
        if (poly.empty()) {
          v = b.constant(0);
        } else if (poly.size() == 1 && poly[0].term->kind == Kind::Const) {
          v = b.constant(poly[0].coeff * poly[0].term->value);
        } else if (poly.size() == 1 && poly[0].coeff == 1) {
          v = poly[0].term;
        } else {
          // Gate outputs are bits, so the polynomial value is in {0,1}.
          v = b.bitp(b.sum_term(std::move(poly)));
        }
        env[nd.outs.front()] = std::move(v);
        break;
      }
      case NodeKind::Inst: {
        const ModuleDef& sub = nl_->module(nd.module);
        std::map<std::string, const std::vector<std::string>*> conn;
        for (const auto& [formal, actuals] : nd.conn) conn[formal] = &actuals;
        std::vector<TermPtr> actuals;
        for (const auto& p : sub.inputs)
          for (const auto& w : *conn.at(p.name)) actuals.push_back(env.at(w));

        std::vector<TermPtr> outs;
        if (const AdderTemplate* t = adder_template(nd.module))
          outs = instantiate_template(*t, actuals, rw_);
        else
          outs = run_module(sub, std::move(actuals),
                            path + "/" + std::to_string(idx));

        std::size_t k = 0;
        for (const auto& p : sub.outputs)
          for (const auto& w : *conn.at(p.name)) env[w] = outs[k++];
        break;
      }
    }
  }

  std::vector<TermPtr> result;
  for (const auto& bit : m.output_bits()) result.push_back(env.at(bit));
  return result;
}

std::map<std::string, TermPtr> Engine::sym_run() {
  std::map<std::string, TermPtr> bindings;
  return sym_run(bindings);
}

std::map<std::string, TermPtr> Engine::sym_run(
    const std::map<std::string, TermPtr>& input_bindings) {
  const ModuleDef& m = nl_->top_module();
  std::vector<TermPtr> inputs;
  for (const auto& p : m.inputs) {
    for (int i = 0; i < p.width; ++i) {
      auto it = input_bindings.find(port_bit(p, i));
      inputs.push_back(it != input_bindings.end()
                           ? it->second
                           : rw_.builder().var(p.name, i));
    }
  }
  std::vector<TermPtr> outs = run_module(m, std::move(inputs), "");
  std::map<std::string, TermPtr> result;
  std::vector<std::string> obits = m.output_bits();
  for (std::size_t i = 0; i < obits.size(); ++i) result[obits[i]] = outs[i];
  return result;
}

std::vector<TermPtr> Engine::canonical_outputs(
    const std::map<std::string, TermPtr>& raw) {
  std::vector<TermPtr> out;
  for (const auto& bit : nl_->top_module().output_bits())
    out.push_back(rw_.mk_s(to_sumlist(raw.at(bit))));
  return out;
}

}  // namespace mulrw
