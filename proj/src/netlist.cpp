#include "mulrw/netlist.hpp"

#include <fstream>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace mulrw {

using nlohmann::json;

std::string bit_name(const std::string& base, int width, int i) {
  if (width == 1) return base;
  return base + "[" + std::to_string(i) + "]";
}

std::string port_bit(const Port& p, int i) { return bit_name(p.name, p.width, i); }

std::vector<std::string> ModuleDef::input_bits() const {
  std::vector<std::string> out;
  for (const auto& p : inputs)
    for (int i = 0; i < p.width; ++i) out.push_back(port_bit(p, i));
  return out;
}

std::vector<std::string> ModuleDef::output_bits() const {
  std::vector<std::string> out;
  for (const auto& p : outputs)
    for (int i = 0; i < p.width; ++i) out.push_back(port_bit(p, i));
  return out;
}

const ModuleDef& Netlist::module(const std::string& name) const {
  auto it = modules.find(name);
  if (it == modules.end())
    throw NetlistError(NetlistErrorCode::UnknownModule, "UnknownModule(\"" + name + "\")");
  return it->second;
}

std::vector<std::string> node_inputs(const Netlist& n, const Node& nd) {
  if (nd.kind != NodeKind::Inst) return nd.ins;
  std::vector<std::string> out;
  const ModuleDef& sub = n.module(nd.module);
  std::set<std::string> in_ports;
  for (const auto& p : sub.inputs) in_ports.insert(p.name);
  for (const auto& [formal, actuals] : nd.conn)
    if (in_ports.count(formal))
      out.insert(out.end(), actuals.begin(), actuals.end());
  return out;
}

std::vector<std::string> node_outputs(const Netlist& n, const Node& nd) {
  if (nd.kind != NodeKind::Inst) return nd.outs;
  std::vector<std::string> out;
  const ModuleDef& sub = n.module(nd.module);
  std::set<std::string> out_ports;
  for (const auto& p : sub.outputs) out_ports.insert(p.name);
  for (const auto& [formal, actuals] : nd.conn)
    if (out_ports.count(formal))
      out.insert(out.end(), actuals.begin(), actuals.end());
  return out;
}

// ---------------------------------------------------------------------------
// Parsing.

namespace {

GateOp gate_op_from_string(const std::string& s) {
  if (s == "NOT") return GateOp::Not;
  if (s == "AND") return GateOp::And;
  if (s == "OR") return GateOp::Or;
  if (s == "XOR") return GateOp::Xor;
  throw NetlistError(NetlistErrorCode::SyntaxError, "unknown op \"" + s + "\"");
}

const char* gate_op_name(GateOp op) {
  switch (op) {
    case GateOp::Not: return "NOT";
    case GateOp::And: return "AND";
    case GateOp::Or: return "OR";
    case GateOp::Xor: return "XOR";
  }
  return "?";
}

std::vector<Port> parse_ports(const json& j, const std::string& where) {
  std::vector<Port> out;
  for (const auto& p : j) {
    Port port;
    port.name = p.at("name").get<std::string>();
    port.width = p.value("width", 1);
    if (port.width < 1)
      throw NetlistError(NetlistErrorCode::WidthMismatch,
                         where + ": port " + port.name + " has width < 1");
    out.push_back(std::move(port));
  }
  return out;
}

std::vector<std::string> parse_actual(const json& j) {
  if (j.is_string()) return {j.get<std::string>()};
  std::vector<std::string> out;
  for (const auto& w : j) out.push_back(w.get<std::string>());
  return out;
}

}  // namespace

Netlist parse_netlist(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw NetlistError(NetlistErrorCode::SyntaxError, e.what());
  }

  Netlist n;
  try {
    n.top = j.at("top").get<std::string>();
    for (const auto& jm : j.at("modules")) {
      ModuleDef m;
      m.name = jm.at("name").get<std::string>();
      m.inputs = parse_ports(jm.at("inputs"), m.name);
      m.outputs = parse_ports(jm.at("outputs"), m.name);
      if (jm.contains("adder_hint")) {
        AdderHint h;
        h.kind = jm["adder_hint"].at("kind").get<std::string>();
        if (jm["adder_hint"].contains("roles"))
          for (const auto& [k, v] : jm["adder_hint"]["roles"].items())
            h.roles[k] = v.get<std::string>();
        m.adder_hint = std::move(h);
      }
      for (const auto& ja : jm.value("assigns", json::array())) {
        Node nd;
        std::string op = ja.at("op").get<std::string>();
        if (op == "INST") {
          nd.kind = NodeKind::Inst;
          nd.module = ja.at("module").get<std::string>();
          for (const auto& [formal, actual] : ja.at("conn").items())
            nd.conn.emplace_back(formal, parse_actual(actual));
        } else if (op == "CONST0" || op == "CONST1") {
          nd.kind = op == "CONST0" ? NodeKind::Const0 : NodeKind::Const1;
          nd.outs.push_back(ja.at("out").get<std::string>());
        } else {
          nd.kind = NodeKind::Gate;
          nd.op = gate_op_from_string(op);
          nd.outs.push_back(ja.at("out").get<std::string>());
          for (const auto& w : ja.at("ins")) nd.ins.push_back(w.get<std::string>());
        }
        m.nodes.push_back(std::move(nd));
      }
      n.modules.emplace(m.name, std::move(m));
    }
  } catch (const json::exception& e) {
    throw NetlistError(NetlistErrorCode::SyntaxError, e.what());
  }

  validate_netlist(n);
  return n;
}

Netlist load_netlist(const std::string& path) {
  std::ifstream f(path);
  if (!f)
    throw NetlistError(NetlistErrorCode::SyntaxError, "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_netlist(ss.str());
}

std::string serialize_netlist(const Netlist& n) {
  json j;
  j["top"] = n.top;
  j["modules"] = json::array();
  for (const auto& [name, m] : n.modules) {
    json jm;
    jm["name"] = name;
    auto ports = [](const std::vector<Port>& ps) {
      json out = json::array();
      for (const auto& p : ps) out.push_back({{"name", p.name}, {"width", p.width}});
      return out;
    };
    jm["inputs"] = ports(m.inputs);
    jm["outputs"] = ports(m.outputs);
    if (m.adder_hint) {
      jm["adder_hint"]["kind"] = m.adder_hint->kind;
      for (const auto& [k, v] : m.adder_hint->roles)
        jm["adder_hint"]["roles"][k] = v;
    }
    json assigns = json::array();
    for (const auto& nd : m.nodes) {
      json ja;
      switch (nd.kind) {
        case NodeKind::Gate:
          ja["op"] = gate_op_name(nd.op);
          ja["out"] = nd.outs.front();
          ja["ins"] = nd.ins;
          break;
        case NodeKind::Const0:
        case NodeKind::Const1:
          ja["op"] = nd.kind == NodeKind::Const0 ? "CONST0" : "CONST1";
          ja["out"] = nd.outs.front();
          break;
        case NodeKind::Inst: {
          ja["op"] = "INST";
          ja["module"] = nd.module;
          json conn = json::object();
          for (const auto& [formal, actuals] : nd.conn) {
            if (actuals.size() == 1)
              conn[formal] = actuals.front();
            else
              conn[formal] = actuals;
          }
          ja["conn"] = std::move(conn);
          break;
        }
      }
      assigns.push_back(std::move(ja));
    }
    jm["assigns"] = std::move(assigns);
    j["modules"].push_back(std::move(jm));
  }
  return j.dump(1);
}

void save_netlist(const Netlist& n, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw NetlistError(NetlistErrorCode::SyntaxError, "cannot write " + path);
  f << serialize_netlist(n) << "\n";
}

// ---------------------------------------------------------------------------
// Validation.

namespace {

void validate_module(const Netlist& n, const ModuleDef& m) {
  std::unordered_set<std::string> driven;
  for (const auto& b : m.input_bits()) {
    if (!driven.insert(b).second)
      throw NetlistError(NetlistErrorCode::MultipleDrivers,
                         m.name + ": duplicate input bit " + b);
  }

  for (const auto& nd : m.nodes) {
    if (nd.kind == NodeKind::Inst) {
      const ModuleDef& sub = n.module(nd.module);  // throws UnknownModule
      std::map<std::string, int> widths;
      for (const auto& p : sub.inputs) widths[p.name] = p.width;
      for (const auto& p : sub.outputs) widths[p.name] = p.width;
      std::set<std::string> seen;
      for (const auto& [formal, actuals] : nd.conn) {
        auto it = widths.find(formal);
        if (it == widths.end())
          throw NetlistError(NetlistErrorCode::BadPort,
                             m.name + ": instance of " + nd.module +
                                 " connects unknown port " + formal);
        if (static_cast<int>(actuals.size()) != it->second)
          throw NetlistError(NetlistErrorCode::WidthMismatch,
                             m.name + ": port " + formal + " of " + nd.module +
                                 " expects " + std::to_string(it->second) +
                                 " bits, got " + std::to_string(actuals.size()));
        seen.insert(formal);
      }
      if (seen.size() != widths.size())
        throw NetlistError(NetlistErrorCode::BadPort,
                           m.name + ": instance of " + nd.module +
                               " leaves ports unconnected");
    } else if (nd.kind == NodeKind::Gate) {
      if (nd.op == GateOp::Not && nd.ins.size() != 1)
        throw NetlistError(NetlistErrorCode::SyntaxError,
                           m.name + ": NOT takes one input");
      if (nd.op != GateOp::Not && nd.ins.size() < 2)
        throw NetlistError(NetlistErrorCode::SyntaxError,
                           m.name + ": gate takes at least two inputs");
    }
    for (const auto& w : node_outputs(n, nd)) {
      if (!driven.insert(w).second)
        throw NetlistError(NetlistErrorCode::MultipleDrivers,
                           m.name + ": wire " + w + " driven more than once");
    }
  }

  for (const auto& nd : m.nodes)
    for (const auto& w : node_inputs(n, nd))
      if (!driven.count(w))
        throw NetlistError(NetlistErrorCode::UndrivenWire,
                           m.name + ": wire " + w + " is never driven");
  for (const auto& b : m.output_bits())
    if (!driven.count(b))
      throw NetlistError(NetlistErrorCode::UndrivenWire,
                         m.name + ": output " + b + " is never driven");

  topo_order(m, n);  // throws CycleDetected
}

void check_recursion(const Netlist& n, const std::string& name,
                     std::vector<std::string>& stack) {
  for (const auto& s : stack)
    if (s == name)
      throw NetlistError(NetlistErrorCode::RecursiveInstantiation,
                         "recursive instantiation of " + name);
  stack.push_back(name);
  for (const auto& nd : n.module(name).nodes)
    if (nd.kind == NodeKind::Inst) check_recursion(n, nd.module, stack);
  stack.pop_back();
}

}  // namespace

void validate_netlist(const Netlist& n) {
  n.module(n.top);
  std::vector<std::string> stack;
  check_recursion(n, n.top, stack);
  for (const auto& [name, m] : n.modules) validate_module(n, m);
}

std::vector<std::size_t> topo_order(const ModuleDef& m, const Netlist& n) {
  // Kahn's algorithm over wire dependencies.
  std::unordered_map<std::string, std::size_t> driver;
  std::vector<std::vector<std::string>> ins(m.nodes.size()), outs(m.nodes.size());
  for (std::size_t i = 0; i < m.nodes.size(); ++i) {
    const Node& nd = m.nodes[i];
    ins[i] = node_inputs(n, nd);
    outs[i] = node_outputs(n, nd);
    for (const auto& w : outs[i]) driver[w] = i;
  }

  std::unordered_set<std::string> ready;
  for (const auto& b : m.input_bits()) ready.insert(b);

  std::vector<int> pending(m.nodes.size(), 0);
  std::vector<std::vector<std::size_t>> consumers_of(m.nodes.size());
  std::queue<std::size_t> q;
  for (std::size_t i = 0; i < m.nodes.size(); ++i) {
    for (const auto& w : ins[i]) {
      if (ready.count(w)) continue;
      auto it = driver.find(w);
      if (it == driver.end())
        throw NetlistError(NetlistErrorCode::UndrivenWire,
                           m.name + ": wire " + w + " is never driven");
      ++pending[i];
      consumers_of[it->second].push_back(i);
    }
    if (pending[i] == 0) q.push(i);
  }

  std::vector<std::size_t> order;
  order.reserve(m.nodes.size());
  while (!q.empty()) {
    std::size_t i = q.front();
    q.pop();
    order.push_back(i);
    for (std::size_t c : consumers_of[i])
      if (--pending[c] == 0) q.push(c);
  }
  if (order.size() != m.nodes.size()) {
    std::string wire;
    for (std::size_t i = 0; i < m.nodes.size(); ++i)
      if (pending[i] > 0 && !outs[i].empty()) {
        wire = outs[i].front();
        break;
      }
    throw NetlistError(NetlistErrorCode::CycleDetected,
                       m.name + ": combinational cycle through wire " + wire);
  }
  return order;
}

NetlistStats stats(const Netlist& n) {
  NetlistStats s;
  s.modules = n.modules.size();
  for (const auto& [name, m] : n.modules) {
    std::set<std::string> wires;
    for (const auto& b : m.input_bits()) wires.insert(b);
    for (const auto& nd : m.nodes) {
      if (nd.kind == NodeKind::Inst)
        ++s.instances;
      else
        ++s.gates;
      for (const auto& w : node_outputs(n, nd)) wires.insert(w);
    }
    s.wires += wires.size();
  }
  return s;
}

}  // namespace mulrw
