"""Gate-level integer-multiplier verification by canonical-form term rewriting.

The heavy lifting lives in the native extension ``mulrw._core``; this package
re-exports its operations:

- ``generate(arch, pp, n, m, ...)``: build a benchmark multiplier netlist
  (JSON string).
- ``verify(netlist_json, op, n, m, ...)``: prove or refute the netlist
  against the multiplication spec; returns a dict with ``status`` and,
  when refuted, a replayable ``counterexample``.
- ``simulate(netlist_json, inputs)``: concrete gate-level simulation.
- ``dump(netlist_json)``: canonical output terms in the debug term syntax.
- ``eval_spec(op, n, m, is_signed, out_width, a, b, acc=0)``: ground-truth
  integer semantics.
- ``mutate(netlist_json, seed)``: one seeded single-gate mutation.
"""

try:
    from mulrw._core import dump, eval_spec, generate, mutate, simulate, verify
except ImportError:  # in-tree test runs: the extension sits on PYTHONPATH
    from _core import dump, eval_spec, generate, mutate, simulate, verify

__all__ = ["generate", "verify", "simulate", "dump", "eval_spec", "mutate"]
__version__ = "0.1.0"
