#include "mulrw/sim.hpp"

#include <unordered_map>

namespace mulrw {

Simulator::Simulator(const Netlist& n) : nl_(&n) { compile(n.top); }

int Simulator::compile(const std::string& name) {
  auto it = ids_.find(name);
  if (it != ids_.end()) return it->second;
  const ModuleDef& m = nl_->module(name);

  // Reserve the id first so sibling instances of the same module reuse it.
  int id = static_cast<int>(modules_.size());
  ids_[name] = id;
  modules_.emplace_back();

  CompiledModule cm;
  cm.name = name;
  std::unordered_map<std::string, int> slot;
  auto slot_of = [&](const std::string& w) {
    auto [pos, inserted] = slot.try_emplace(w, cm.slot_count);
    if (inserted) ++cm.slot_count;
    return pos->second;
  };
  for (const auto& b : m.input_bits()) cm.input_slots.push_back(slot_of(b));

  for (std::size_t idx : topo_order(m, *nl_)) {
    const Node& nd = m.nodes[idx];
    CompiledNode cn;
    cn.kind = nd.kind;
    cn.op = nd.op;
    if (nd.kind == NodeKind::Inst) {
      cn.module_id = compile(nd.module);
      const ModuleDef& sub = nl_->module(nd.module);
      std::map<std::string, const std::vector<std::string>*> conn;
      for (const auto& [formal, actuals] : nd.conn) conn[formal] = &actuals;
      for (const auto& p : sub.inputs)
        for (const auto& w : *conn.at(p.name)) cn.actual_ins.push_back(slot_of(w));
      for (const auto& p : sub.outputs)
        for (const auto& w : *conn.at(p.name)) cn.actual_outs.push_back(slot_of(w));
    } else {
      for (const auto& w : nd.ins) cn.ins.push_back(slot_of(w));
      cn.out = slot_of(nd.outs.front());
    }
    cm.nodes.push_back(std::move(cn));
  }
  for (const auto& b : m.output_bits()) cm.output_slots.push_back(slot_of(b));

  modules_[id] = std::move(cm);
  return id;
}

void Simulator::exec(int module_id, std::vector<std::uint8_t>& env) const {
  const CompiledModule& cm = modules_[module_id];
  for (const CompiledNode& cn : cm.nodes) {
    switch (cn.kind) {
      case NodeKind::Const0:
        env[cn.out] = 0;
        break;
      case NodeKind::Const1:
        env[cn.out] = 1;
        break;
      case NodeKind::Gate: {
        std::uint8_t v = 0;
        switch (cn.op) {
          case GateOp::Not:
            v = env[cn.ins[0]] ^ 1;
            break;
          case GateOp::And:
            v = 1;
            for (int s : cn.ins) v &= env[s];
            break;
          case GateOp::Or:
            v = 0;
            for (int s : cn.ins) v |= env[s];
            break;
          case GateOp::Xor:
            v = 0;
            for (int s : cn.ins) v ^= env[s];
            break;
        }
        env[cn.out] = v;
        break;
      }
      case NodeKind::Inst: {
        const CompiledModule& sub = modules_[cn.module_id];
        std::vector<std::uint8_t> sub_env(sub.slot_count, 0);
        for (std::size_t i = 0; i < cn.actual_ins.size(); ++i)
          sub_env[sub.input_slots[i]] = env[cn.actual_ins[i]];
        exec(cn.module_id, sub_env);
        for (std::size_t i = 0; i < cn.actual_outs.size(); ++i)
          env[cn.actual_outs[i]] = sub_env[sub.output_slots[i]];
        break;
      }
    }
  }
}

std::vector<std::uint8_t> Simulator::run(const std::string& module,
                                         const std::vector<std::uint8_t>& inputs) const {
  auto it = ids_.find(module);
  int id = it != ids_.end() ? it->second : const_cast<Simulator*>(this)->compile(module);
  const CompiledModule& cm = modules_[id];
  if (inputs.size() != cm.input_slots.size())
    throw SimError(module + ": expected " + std::to_string(cm.input_slots.size()) +
                   " input bits, got " + std::to_string(inputs.size()));
  std::vector<std::uint8_t> env(cm.slot_count, 0);
  for (std::size_t i = 0; i < inputs.size(); ++i)
    env[cm.input_slots[i]] = inputs[i] ? 1 : 0;
  exec(id, env);
  std::vector<std::uint8_t> out(cm.output_slots.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = env[cm.output_slots[i]];
  return out;
}

std::map<std::string, BigInt> Simulator::run_top(
    const std::map<std::string, BigInt>& inputs) const {
  const ModuleDef& m = nl_->top_module();
  std::vector<std::uint8_t> bits;
  for (const auto& p : m.inputs) {
    auto it = inputs.find(p.name);
    if (it == inputs.end()) throw SimError("unbound input port " + p.name);
    for (int i = 0; i < p.width; ++i)
      bits.push_back(static_cast<std::uint8_t>(((it->second >> i) & 1) != 0));
  }
  std::vector<std::uint8_t> out = run(nl_->top, bits);
  std::map<std::string, BigInt> result;
  std::size_t pos = 0;
  for (const auto& p : m.outputs) {
    BigInt v = 0;
    for (int i = 0; i < p.width; ++i)
      if (out[pos++]) v += BigInt(1) << i;
    result[p.name] = v;
  }
  return result;
}

}  // namespace mulrw
