// Python bindings for the main operations: generate, verify, simulate,
// dump, eval_spec.  Netlists cross the boundary as JSON strings; big
// integers as Python ints via their decimal representation.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mulrw/bench.hpp"
#include "mulrw/checker.hpp"
#include "mulrw/genmul.hpp"
#include "mulrw/symsim.hpp"

namespace py = pybind11;
using namespace mulrw;

namespace {

BigInt to_bigint(const py::int_& v) {
  return BigInt(static_cast<std::string>(py::str(static_cast<py::object>(v))));
}

py::int_ to_pyint(const BigInt& v) {
  return py::reinterpret_steal<py::int_>(
      PyLong_FromString(v.str().c_str(), nullptr, 10));
}

SpecDescriptor make_descriptor(const std::string& op, int n, int m,
                               bool is_signed, int out_width) {
  SpecDescriptor d;
  d.op = op == "mac" ? SpecOp::Mac : SpecOp::Mult;
  d.n = n;
  d.m = m;
  d.a_signed = d.b_signed = is_signed;
  d.out_width = out_width;
  return d;
}

std::map<std::string, BigInt> convert_inputs(const py::dict& inputs) {
  std::map<std::string, BigInt> values;
  for (auto item : inputs)
    values[item.first.cast<std::string>()] =
        to_bigint(item.second.cast<py::int_>());
  return values;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Gate-level multiplier verification core";

  mod.def(
      "generate",
      [](const std::string& arch, const std::string& pp, int n, int m,
         bool is_signed, const std::string& op, int out_width) {
        GenConfig cfg;
        cfg.arch = arch_from_string(arch);
        cfg.pp = pp_from_string(pp);
        cfg.n = n;
        cfg.m = m;
        cfg.is_signed = is_signed;
        cfg.op = op == "mac" ? SpecOp::Mac : SpecOp::Mult;
        cfg.out_width = out_width;
        return serialize_netlist(generate(cfg));
      },
      py::arg("arch"), py::arg("pp"), py::arg("n"), py::arg("m"),
      py::arg("is_signed") = false, py::arg("op") = "mult",
      py::arg("out_width") = 0,
      "Generate a benchmark multiplier netlist as a JSON string");

  mod.def(
      "verify",
      [](const std::string& netlist_json, const std::string& op, int n, int m,
         bool is_signed, int out_width, bool hashing,
         unsigned long long cex_budget) {
        Netlist nl = parse_netlist(netlist_json);
        VerifyOptions o;
        o.hashing = hashing;
        o.cex_budget = cex_budget;
        VerifyReport r = verify(nl, make_descriptor(op, n, m, is_signed, out_width), o);
        py::dict out;
        out["status"] = r.status == VerifyStatus::Proved    ? "PROVED"
                        : r.status == VerifyStatus::Refuted ? "REFUTED"
                                                            : "UNKNOWN";
        out["message"] = r.message;
        out["node_visits"] = r.stats.node_visits;
        out["hash_fast_path"] = r.stats.compare.hash_fast_path;
        if (r.cex) {
          py::dict cex, ins;
          for (const auto& [port, v] : r.cex->inputs) ins[port.c_str()] = to_pyint(v);
          cex["inputs"] = ins;
          cex["got"] = to_pyint(r.cex->got);
          cex["want"] = to_pyint(r.cex->want);
          out["counterexample"] = cex;
        }
        return out;
      },
      py::arg("netlist_json"), py::arg("op"), py::arg("n"), py::arg("m"),
      py::arg("is_signed") = false, py::arg("out_width") = 0,
      py::arg("hashing") = true, py::arg("cex_budget") = 100000,
      "Verify a netlist against a multiplier spec");

  mod.def(
      "simulate",
      [](const std::string& netlist_json, const py::dict& inputs) {
        Netlist nl = parse_netlist(netlist_json);
        Simulator sim(nl);
        py::dict out;
        for (const auto& [port, v] : sim.run_top(convert_inputs(inputs)))
          out[port.c_str()] = to_pyint(v);
        return out;
      },
      py::arg("netlist_json"), py::arg("inputs"),
      "Concrete simulation of the top module");

  mod.def(
      "dump",
      [](const std::string& netlist_json, bool hashing) {
        Netlist nl = parse_netlist(netlist_json);
        EngineOptions eo;
        eo.hashing = hashing;
        Engine eng(nl, eo);
        auto canon = eng.canonical_outputs(eng.sym_run());
        std::vector<std::string> out;
        for (const auto& t : canon) out.push_back(term_to_string(t));
        return out;
      },
      py::arg("netlist_json"), py::arg("hashing") = true,
      "Canonical output terms, little-endian, in the debug term syntax");

  mod.def(
      "eval_spec",
      [](const std::string& op, int n, int m, bool is_signed, int out_width,
         const py::int_& a, const py::int_& b, const py::int_& acc) {
        return to_pyint(eval_spec_integer(
            make_descriptor(op, n, m, is_signed, out_width), to_bigint(a),
            to_bigint(b), to_bigint(acc)));
      },
      py::arg("op"), py::arg("n"), py::arg("m"), py::arg("is_signed"),
      py::arg("out_width"), py::arg("a"), py::arg("b"), py::arg("acc") = 0,
      "Ground-truth integer semantics of the spec");

  mod.def(
      "mutate",
      [](const std::string& netlist_json, std::uint64_t seed) {
        auto [nl, info] = mutate(parse_netlist(netlist_json), seed);
        return py::make_tuple(serialize_netlist(nl), info.description);
      },
      py::arg("netlist_json"), py::arg("seed"),
      "One seeded single-gate mutation; returns (netlist_json, description)");
}
