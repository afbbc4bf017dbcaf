"""Counting graphs over sd-DNNFs: big-integer valuation, conditioning, compression.

A counting graph values literal leaves 1 (0 when contradicted by the
assumption set), OR nodes as the sum and AND nodes as the product of
their children; the root value is the model count of the formula under
the assumptions.  Compression removes auxiliary-variable leaves and
degenerate internal nodes while preserving every conditioned valuation,
provided the CNF behind the graph preserved the supported-model count
(each model over program atoms extends uniquely to the auxiliaries).
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass

from . import kernel
from .kernel import SIGN_FALSE, SIGN_TRUE
from .nnf import NODE_LIT, NnfDag, validate
from .program import AssumptionSet


@dataclass(frozen=True)
class SizeReport:
    node_count: int
    edge_count: int


def size_report(graph) -> SizeReport:
    """Exact node and edge counts of a DAG or counting graph."""
    return SizeReport(graph.node_count, graph.edge_count)


class _FlatGraph:
    """Shared evaluation machinery over flat node arrays."""

    kinds: array
    lits: array
    children: array
    offsets: array
    root: int
    num_vars: int
    var_atom: tuple  # var -> atom id (program vars) or None (auxiliaries)
    missing_program: tuple  # (var, atom id) pairs absent from the DAG
    missing_aux: int  # count of auxiliary vars absent from the DAG

    @property
    def node_count(self) -> int:
        return len(self.kinds)

    @property
    def edge_count(self) -> int:
        return len(self.children)

    @property
    def atom_var(self) -> dict[int, int]:
        cached = getattr(self, "_atom_var_cache", None)
        if cached is None:
            cached = {atom: var for var, atom in enumerate(self.var_atom)
                      if atom is not None}
            self._atom_var_cache = cached
        return cached

    def _signs(self, assumptions: AssumptionSet) -> array:
        signs = array("b", bytes(self.num_vars + 1))
        atom_var = self.atom_var
        try:
            for atom in assumptions.true_atoms:
                signs[atom_var[atom]] = SIGN_TRUE
            for atom in assumptions.false_atoms:
                signs[atom_var[atom]] = SIGN_FALSE
        except KeyError as exc:
            raise KeyError(f"assumption on unknown program atom id {exc}") from None
        return signs

    def _multiplier(self, assumptions: AssumptionSet) -> int:
        mult = 1 << self.missing_aux
        for _var, atom in self.missing_program:
            if not assumptions.mentions(atom):
                mult *= 2
        return mult

    def evaluate(self, assumptions: AssumptionSet | None = None) -> int:
        """Model count under the assumptions; one post-order pass."""
        assumptions = assumptions or AssumptionSet()
        if not assumptions.is_consistent():
            return 0
        values = kernel.evaluate_graph(self.kinds, self.lits, self.children,
                                       self.offsets, self._signs(assumptions))
        return values[self.root] * self._multiplier(assumptions)

    def evaluate_instrumented(self, assumptions: AssumptionSet | None = None):
        """(count, nodes visited) using the pure-Python kernel."""
        from . import _evalpy

        assumptions = assumptions or AssumptionSet()
        if not assumptions.is_consistent():
            return 0, 0
        values = _evalpy.evaluate_graph(self.kinds, self.lits, self.children,
                                        self.offsets, self._signs(assumptions))
        return values[self.root] * self._multiplier(assumptions), len(values)


def _flatten(kinds, lits, children):
    flat_children = array("i")
    offsets = array("i", [0])
    for cs in children:
        flat_children.extend(cs)
        offsets.append(len(flat_children))
    return (array("b", kinds), array("i", lits), flat_children, offsets)


class CountingGraph(_FlatGraph):
    """Evaluable counting graph over a validated smooth sd-DNNF."""

    def __init__(self, dag: NnfDag, var_atom: list[int | None]):
        report = validate(dag)
        if not report.all_ok():
            raise ValueError(f"refusing to count on an invalid NNF: {report}")
        if len(var_atom) != dag.num_vars + 1:
            raise ValueError("var_atom must map every variable 1..num_vars")
        self.dag = dag
        self.kinds, self.lits, self.children, self.offsets = _flatten(
            dag.kinds, dag.lits, dag.children)
        self.root = dag.root
        self.num_vars = dag.num_vars
        self.var_atom = tuple(var_atom)
        covered = dag.var_masks()[dag.root]
        missing_program = []
        missing_aux = 0
        for var in range(1, dag.num_vars + 1):
            if covered >> (var - 1) & 1:
                continue
            if self.var_atom[var] is None:
                missing_aux += 1
            else:
                missing_program.append((var, self.var_atom[var]))
        self.missing_program = tuple(missing_program)
        self.missing_aux = missing_aux


@dataclass(frozen=True)
class CompressionStats:
    traversals: int
    dropped_literals: int
    dropped_internal: int
    absorbed: int


class CompressedGraph(_FlatGraph):
    """Counting graph after compression: program literals and >=2-ary nodes only.

    ``constant`` replaces the node arrays when the whole graph reduced to a
    literal-free value (unsatisfiable input, or a program without atoms).
    ``provenance[i]`` is the original node id behind compressed node i.
    """

    def __init__(self, kinds, lits, children, root, num_vars, var_atom,
                 missing_program, missing_aux, provenance, constant=None,
                 stats=None):
        self.kinds, self.lits, self.children, self.offsets = _flatten(
            kinds, lits, children)
        self.root = root
        self.num_vars = num_vars
        self.var_atom = tuple(var_atom)
        self.missing_program = tuple(missing_program)
        self.missing_aux = missing_aux
        self.provenance = tuple(provenance)
        self.constant = constant
        self.stats = stats

    def evaluate(self, assumptions: AssumptionSet | None = None) -> int:
        assumptions = assumptions or AssumptionSet()
        if not assumptions.is_consistent():
            return 0
        if self.constant is not None:
            return self.constant * self._multiplier(assumptions)
        return super().evaluate(assumptions)

    def evaluate_instrumented(self, assumptions: AssumptionSet | None = None):
        assumptions = assumptions or AssumptionSet()
        if self.constant is not None:
            ok = assumptions.is_consistent()
            return (self.constant * self._multiplier(assumptions) if ok else 0), 0
        return super().evaluate_instrumented(assumptions)


def compress(graph: CountingGraph) -> CompressedGraph:
    """One bottom-up pass: drop auxiliary literals, absorb degenerate nodes.

    Auxiliary-literal leaves are ignored; internal nodes keep only
    non-ignored children, vanishing at arity 0 and becoming their child at
    arity 1.  Every conditioned valuation over program atoms is preserved.
    """
    n = graph.node_count
    DROP = -1
    status = [DROP] * n
    kinds: list[int] = []
    lits: list[int] = []
    children: list[tuple[int, ...]] = []
    provenance: list[int] = []
    dropped_literals = dropped_internal = absorbed = 0

    def emit(kind, lit, cs, original) -> int:
        kinds.append(kind)
        lits.append(lit)
        children.append(cs)
        provenance.append(original)
        return len(kinds) - 1

    for i in range(n):
        kind = graph.kinds[i]
        if kind == NODE_LIT:
            lit = graph.lits[i]
            if graph.var_atom[abs(lit)] is None:
                dropped_literals += 1
            else:
                status[i] = emit(NODE_LIT, lit, (), i)
            continue
        resolved = tuple(status[c]
                         for c in graph.children[graph.offsets[i]:graph.offsets[i + 1]]
                         if status[c] != DROP)
        if not resolved:
            dropped_internal += 1
        elif len(resolved) == 1:
            status[i] = resolved[0]
            absorbed += 1
        else:
            status[i] = emit(kind, 0, resolved, i)

    stats = CompressionStats(1, dropped_literals, dropped_internal, absorbed)
    if status[graph.root] == DROP:
        # Whole graph was auxiliary-only; its value cannot depend on program
        # atoms, so it is the single unconditioned constant.
        values = kernel.evaluate_graph(graph.kinds, graph.lits, graph.children,
                                       graph.offsets,
                                       array("b", bytes(graph.num_vars + 1)))
        return CompressedGraph([], [], [], 0, graph.num_vars, graph.var_atom,
                               graph.missing_program, graph.missing_aux, [],
                               constant=values[graph.root], stats=stats)
    return CompressedGraph(kinds, lits, children, status[graph.root],
                           graph.num_vars, graph.var_atom,
                           graph.missing_program, graph.missing_aux,
                           provenance, stats=stats)


def evaluate(graph: _FlatGraph, assumptions: AssumptionSet | None = None) -> int:
    """Module-level alias: count models of the graph under the assumptions."""
    return graph.evaluate(assumptions)
