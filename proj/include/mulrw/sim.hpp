// Concrete two-valued gate simulation in topological order.  Ground truth
// for adder classification, counterexample replay, and every property test.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mulrw/netlist.hpp"

namespace mulrw {

struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Simulator {
 public:
  explicit Simulator(const Netlist& n);

  // Bit-level entry point: values in ModuleDef::input_bits() order, result
  // in output_bits() order.
  std::vector<std::uint8_t> run(const std::string& module,
                                const std::vector<std::uint8_t>& inputs) const;

  // Word-level entry point on the top module: ports as unsigned integers.
  std::map<std::string, BigInt> run_top(const std::map<std::string, BigInt>& inputs) const;

  const Netlist& netlist() const { return *nl_; }

 private:
  struct CompiledNode {
    NodeKind kind;
    GateOp op;
    int out = -1;                 // gate/const output slot
    std::vector<int> ins;         // gate input slots
    int module_id = -1;           // instance target
    std::vector<int> actual_ins;  // instance input slots, submodule port order
    std::vector<int> actual_outs;
  };
  struct CompiledModule {
    std::string name;
    int slot_count = 0;
    std::vector<int> input_slots;
    std::vector<int> output_slots;
    std::vector<CompiledNode> nodes;  // topologically ordered
  };

  int compile(const std::string& name);
  void exec(int module_id, std::vector<std::uint8_t>& env) const;

  const Netlist* nl_;
  std::vector<CompiledModule> modules_;
  std::map<std::string, int> ids_;
};

}  // namespace mulrw
