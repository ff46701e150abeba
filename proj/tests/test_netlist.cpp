#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "mulrw/genmul.hpp"
#include "mulrw/netlist.hpp"

using namespace mulrw;

TEST_CASE("parse: well-formed half adder") {
  Netlist n = parse_netlist(fixtures::kHalfAdder);
  CHECK(n.top == "ha");
  REQUIRE(n.modules.size() == 1);
  const ModuleDef& m = n.top_module();
  CHECK(m.inputs.size() == 2);
  CHECK(m.outputs.size() == 2);
  CHECK(m.nodes.size() == 2);
  NetlistStats st = stats(n);
  CHECK(st.modules == 1);
  CHECK(st.gates == 2);
  CHECK(st.instances == 0);
}

TEST_CASE("parse errors carry distinct diagnostic codes") {
  // Reference to an undefined module.
  const std::string unknown = R"({
    "top": "t",
    "modules": [{
      "name": "t",
      "inputs": [{"name": "a"}, {"name": "b"}, {"name": "cin"}],
      "outputs": [{"name": "s"}, {"name": "c"}],
      "assigns": [{"op": "INST", "module": "FA",
        "conn": {"a": ["a"], "b": ["b"], "cin": ["cin"], "s": ["s"], "c": ["c"]}}]
    }]
  })";
  try {
    parse_netlist(unknown);
    FAIL("expected UnknownModule");
  } catch (const NetlistError& e) {
    CHECK(e.code == NetlistErrorCode::UnknownModule);
    CHECK(std::string(e.what()).find("FA") != std::string::npos);
  }

  // Combinational loop w -> g -> w.
  const std::string loop = R"({
    "top": "t",
    "modules": [{
      "name": "t",
      "inputs": [{"name": "a"}],
      "outputs": [{"name": "y"}],
      "assigns": [
        {"out": "w", "op": "AND", "ins": ["a", "y"]},
        {"out": "y", "op": "NOT", "ins": ["w"]}
      ]
    }]
  })";
  try {
    parse_netlist(loop);
    FAIL("expected CycleDetected");
  } catch (const NetlistError& e) {
    CHECK(e.code == NetlistErrorCode::CycleDetected);
  }

  // Same wire driven twice.
  const std::string multi = R"({
    "top": "t",
    "modules": [{
      "name": "t",
      "inputs": [{"name": "a"}, {"name": "b"}],
      "outputs": [{"name": "y"}],
      "assigns": [
        {"out": "y", "op": "AND", "ins": ["a", "b"]},
        {"out": "y", "op": "OR", "ins": ["a", "b"]}
      ]
    }]
  })";
  try {
    parse_netlist(multi);
    FAIL("expected MultipleDrivers");
  } catch (const NetlistError& e) {
    CHECK(e.code == NetlistErrorCode::MultipleDrivers);
  }

  // Output port never driven.
  const std::string undriven = R"({
    "top": "t",
    "modules": [{
      "name": "t",
      "inputs": [{"name": "a"}],
      "outputs": [{"name": "y"}],
      "assigns": []
    }]
  })";
  try {
    parse_netlist(undriven);
    FAIL("expected UndrivenWire");
  } catch (const NetlistError& e) {
    CHECK(e.code == NetlistErrorCode::UndrivenWire);
  }

  // Not even JSON.
  CHECK_THROWS_AS(parse_netlist("not json"), NetlistError);
}

TEST_CASE("serialize/parse round-trip is the identity") {
  for (const std::string* fix :
       {&fixtures::kHalfAdder, &fixtures::kFullAdder, &fixtures::kNand,
        &fixtures::kEmptyTop}) {
    Netlist n1 = parse_netlist(*fix);
    std::string s1 = serialize_netlist(n1);
    Netlist n2 = parse_netlist(s1);
    CHECK(serialize_netlist(n2) == s1);
  }
  // Also on a hierarchical generated netlist with instances and hints.
  GenConfig cfg;
  cfg.arch = Arch::Dadda;
  cfg.pp = PPGen::Booth2;
  cfg.is_signed = true;
  cfg.n = 5;
  cfg.m = 4;
  Netlist g = generate(cfg);
  std::string s = serialize_netlist(g);
  CHECK(serialize_netlist(parse_netlist(s)) == s);
}

TEST_CASE("topo_order respects dataflow and covers every node") {
  GenConfig cfg;
  cfg.arch = Arch::Wallace;
  cfg.pp = PPGen::Simple;
  cfg.n = cfg.m = 5;
  Netlist n = generate(cfg);
  for (const auto& [name, m] : n.modules) {
    std::vector<std::size_t> order = topo_order(m, n);
    CHECK(order.size() == m.nodes.size());
    std::set<std::string> ready;
    for (const auto& b : m.input_bits()) ready.insert(b);
    std::set<std::size_t> seen;
    for (std::size_t idx : order) {
      CHECK(seen.insert(idx).second);  // exactly once
      const Node& nd = m.nodes[idx];
      for (const auto& w : node_inputs(n, nd)) CHECK(ready.count(w) == 1);
      for (const auto& w : node_outputs(n, nd)) ready.insert(w);
    }
  }

  // Single-gate module trivially orders to that gate.
  Netlist x = parse_netlist(fixtures::kXorOnly);
  CHECK(topo_order(x.top_module(), x) == std::vector<std::size_t>{0});
}

TEST_CASE("stats on empty top are all zero") {
  Netlist n = parse_netlist(fixtures::kEmptyTop);
  NetlistStats st = stats(n);
  CHECK(st.gates == 0);
  CHECK(st.instances == 0);
  CHECK(st.wires == 0);
}

TEST_CASE("port bit naming") {
  CHECK(port_bit({"a", 1}, 0) == "a");
  CHECK(port_bit({"a", 4}, 2) == "a[2]");
  CHECK(bit_name("out", 8, 7) == "out[7]");
}
