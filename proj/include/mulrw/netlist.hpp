// Hierarchical gate-level circuit model with explicit sharing via named
// wires, plus the on-disk JSON format.  All wires are single bits; multi-bit
// ports are expanded to indexed bits ("p[i]") at parse time.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mulrw/term.hpp"

namespace mulrw {

enum class NetlistErrorCode {
  SyntaxError,
  UnknownModule,
  CycleDetected,
  UndrivenWire,
  MultipleDrivers,
  WidthMismatch,
  RecursiveInstantiation,
  BadPort,
};

struct NetlistError : std::runtime_error {
  NetlistError(NetlistErrorCode code, const std::string& what)
      : std::runtime_error(what), code(code) {}
  NetlistErrorCode code;
};

struct Port {
  std::string name;
  int width = 1;
};

// Expanded bit name of a port: "p" for width-1 ports, "p[i]" otherwise.
std::string port_bit(const Port& p, int i);
std::string bit_name(const std::string& base, int width, int i);

enum class NodeKind : std::uint8_t { Gate, Const0, Const1, Inst };

struct Node {
  NodeKind kind = NodeKind::Gate;
  GateOp op = GateOp::And;                       // Gate
  std::vector<std::string> ins;                  // Gate input wires
  std::vector<std::string> outs;                 // driven wires (Gate/Const: one)
  std::string module;                            // Inst
  // Inst: formal port name -> expanded actual wires, one per bit.
  std::vector<std::pair<std::string, std::vector<std::string>>> conn;
};

struct AdderHint {
  std::string kind;                        // "HA" | "FA" | "RCA"
  std::map<std::string, std::string> roles;  // port -> role
};

struct ModuleDef {
  std::string name;
  std::vector<Port> inputs;
  std::vector<Port> outputs;
  std::vector<Node> nodes;
  std::optional<AdderHint> adder_hint;

  std::vector<std::string> input_bits() const;
  std::vector<std::string> output_bits() const;
};

struct Netlist {
  std::map<std::string, ModuleDef> modules;
  std::string top;

  const ModuleDef& module(const std::string& name) const;
  const ModuleDef& top_module() const { return module(top); }
};

struct NetlistStats {
  std::size_t modules = 0;
  std::size_t gates = 0;      // gate + const nodes, summed over module defs
  std::size_t instances = 0;
  std::size_t wires = 0;      // distinct wires, summed over module defs
};

Netlist parse_netlist(const std::string& text);
Netlist load_netlist(const std::string& path);
std::string serialize_netlist(const Netlist& n);
void save_netlist(const Netlist& n, const std::string& path);

// Establishes all invariants; parse_netlist calls this.
void validate_netlist(const Netlist& n);

// Indices into m.nodes such that every node appears after its input drivers.
// The netlist resolves instance port directions.
std::vector<std::size_t> topo_order(const ModuleDef& m, const Netlist& n);

NetlistStats stats(const Netlist& n);

// Input wires consumed and output wires driven by a node (instances resolved
// against the netlist's module table).
std::vector<std::string> node_inputs(const Netlist& n, const Node& nd);
std::vector<std::string> node_outputs(const Netlist& n, const Node& nd);

}  // namespace mulrw
