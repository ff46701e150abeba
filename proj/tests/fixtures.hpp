// Shared netlist fixtures for the unit tests.
#pragma once

#include <string>

namespace fixtures {

// Minimal half adder: sum = a XOR b, carry = a AND b.
inline const std::string kHalfAdder = R"({
  "top": "ha",
  "modules": [{
    "name": "ha",
    "inputs": [{"name": "a"}, {"name": "b"}],
    "outputs": [{"name": "s"}, {"name": "c"}],
    "assigns": [
      {"out": "s", "op": "XOR", "ins": ["a", "b"]},
      {"out": "c", "op": "AND", "ins": ["a", "b"]}
    ]
  }]
})";

// Standard gate-level full adder (two XOR, two AND, one OR).
inline const std::string kFullAdder = R"({
  "top": "fa",
  "modules": [{
    "name": "fa",
    "inputs": [{"name": "a"}, {"name": "b"}, {"name": "cin"}],
    "outputs": [{"name": "s"}, {"name": "c"}],
    "assigns": [
      {"out": "t", "op": "XOR", "ins": ["a", "b"]},
      {"out": "s", "op": "XOR", "ins": ["t", "cin"]},
      {"out": "g1", "op": "AND", "ins": ["a", "b"]},
      {"out": "g2", "op": "AND", "ins": ["t", "cin"]},
      {"out": "c", "op": "OR", "ins": ["g1", "g2"]}
    ]
  }]
})";

// Single NAND gate.
inline const std::string kNand = R"({
  "top": "nand2",
  "modules": [{
    "name": "nand2",
    "inputs": [{"name": "a"}, {"name": "b"}],
    "outputs": [{"name": "y"}],
    "assigns": [
      {"out": "t", "op": "AND", "ins": ["a", "b"]},
      {"out": "y", "op": "NOT", "ins": ["t"]}
    ]
  }]
})";

// 2-input XOR only: has no carry behavior, must not classify as an adder.
inline const std::string kXorOnly = R"({
  "top": "x2",
  "modules": [{
    "name": "x2",
    "inputs": [{"name": "a"}, {"name": "b"}],
    "outputs": [{"name": "y"}],
    "assigns": [{"out": "y", "op": "XOR", "ins": ["a", "b"]}]
  }]
})";

// Module with no nodes and no ports.
inline const std::string kEmptyTop = R"({
  "top": "empty",
  "modules": [{"name": "empty", "inputs": [], "outputs": [], "assigns": []}]
})";

// 1x1 "multiplier" whose single meaningful output bit is stuck at 0.
inline const std::string kStuckZero = R"({
  "top": "top",
  "modules": [{
    "name": "top",
    "inputs": [{"name": "a", "width": 1}, {"name": "b", "width": 1}],
    "outputs": [{"name": "out", "width": 1}],
    "assigns": [{"out": "out", "op": "CONST0"}]
  }]
})";

}  // namespace fixtures
