// Single-pass symbolic simulation: one visit per elaborated netlist node,
// dispatching to adder-template substitution (C1), inline instance expansion
// (C2), gate arithmetization (C3), and the canonical s/c constructors (C4).
#pragma once

#include <unordered_map>

#include "mulrw/adderdetect.hpp"
#include "mulrw/netlist.hpp"
#include "mulrw/rewrite.hpp"
#include "mulrw/sim.hpp"

namespace mulrw {

struct SymSimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EngineOptions {
  bool hashing = true;
  int exhaustive_limit = 20;
  bool audit = false;  // record per-elaborated-node visit counts
};

class Engine {
 public:
  Engine(const Netlist& n, EngineOptions opts = {});

  // Symbolic run of the top module.  Default bindings are fresh variables,
  // one per input port bit: Var(port, i).
  std::map<std::string, TermPtr> sym_run();
  std::map<std::string, TermPtr> sym_run(
      const std::map<std::string, TermPtr>& input_bindings);

  // Output bits of the last sym_run, mk_s-normalized so syntactic comparison
  // against a specification term vector is meaningful (s(x) = x for bits).
  std::vector<TermPtr> canonical_outputs(const std::map<std::string, TermPtr>& raw) ;

  // Adder classification with caching; wide ripple compositions beyond the
  // exhaustive limit are certified by symbolic simulation against the
  // vector-adder template.
  const AdderTemplate* adder_template(const std::string& module_name);

  RewriteEngine& rewriter() { return rw_; }
  const Netlist& netlist() const { return *nl_; }
  const EngineOptions& options() const { return opts_; }

  unsigned long long node_visits() const { return node_visits_; }
  // Audit map: elaborated-node key -> visit count (audit mode only).
  const std::unordered_map<std::string, unsigned>& visit_counts() const {
    return visit_counts_;
  }

 private:
  std::vector<TermPtr> run_module(const ModuleDef& m, std::vector<TermPtr> inputs,
                                  const std::string& path);
  const std::vector<std::size_t>& topo(const ModuleDef& m);

  const Netlist* nl_;
  EngineOptions opts_;
  RewriteEngine rw_;
  Simulator sim_;
  std::map<std::string, std::optional<AdderTemplate>> templates_;
  std::map<std::string, std::vector<std::size_t>> topo_cache_;
  unsigned long long node_visits_ = 0;
  bool classifying_ = false;
  std::unordered_map<std::string, unsigned> visit_counts_;
};

}  // namespace mulrw
