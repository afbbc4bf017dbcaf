"""Negation normal form DAGs: representation, exchange format, validation, smoothing.

Nodes live in parallel arrays in topological order (children strictly
precede parents), which is what the valuation kernels consume.  The
exchange format is the c2d convention::

    nnf <v> <e> <n>
    L <lit>
    A <c> <child ids...>
    O <decision-var> <c> <child ids...>

with ``A 0`` as true and ``O 0 0`` as false.
"""

from __future__ import annotations

from dataclasses import dataclass

NODE_LIT = 0
NODE_AND = 1
NODE_OR = 2


class NnfFormatError(ValueError):
    pass


class NnfDag:
    """Rooted DAG of literal / AND / OR nodes over variables 1..num_vars."""

    def __init__(self, kinds, lits, children, num_vars, root=None, decisions=None):
        self.kinds: list[int] = kinds
        self.lits: list[int] = lits
        self.children: list[tuple[int, ...]] = children
        self.num_vars = num_vars
        self.root = (len(kinds) - 1) if root is None else root
        self.decisions: list[int] = decisions or [0] * len(kinds)
        if not kinds:
            raise ValueError("empty DAG")
        for i, cs in enumerate(children):
            for c in cs:
                if not 0 <= c < i:
                    raise ValueError(f"node {i} child {c} breaks topological order")

    @property
    def node_count(self) -> int:
        return len(self.kinds)

    @property
    def edge_count(self) -> int:
        return sum(len(cs) for cs in self.children)

    def var_masks(self) -> list[int]:
        """Per-node variable sets as bitmasks (bit v-1 for variable v)."""
        masks = [0] * self.node_count
        for i, kind in enumerate(self.kinds):
            if kind == NODE_LIT:
                masks[i] = 1 << (abs(self.lits[i]) - 1)
            else:
                m = 0
                for c in self.children[i]:
                    m |= masks[c]
                masks[i] = m
        return masks


class NnfBuilder:
    """Incremental bottom-up construction with literal-node sharing."""

    def __init__(self, num_vars: int, node_cap: int | None = None):
        self.kinds: list[int] = []
        self.lits: list[int] = []
        self.children: list[tuple[int, ...]] = []
        self.decisions: list[int] = []
        self.num_vars = num_vars
        self.node_cap = node_cap
        self._lit_nodes: dict[int, int] = {}

    def _push(self, kind: int, lit: int, children: tuple[int, ...], decision=0) -> int:
        if self.node_cap is not None and len(self.kinds) >= self.node_cap:
            raise ResourceBudgetError(
                f"NNF node budget of {self.node_cap} exhausted")
        self.kinds.append(kind)
        self.lits.append(lit)
        self.children.append(children)
        self.decisions.append(decision)
        return len(self.kinds) - 1

    def literal(self, lit: int) -> int:
        node = self._lit_nodes.get(lit)
        if node is None:
            node = self._push(NODE_LIT, lit, ())
            self._lit_nodes[lit] = node
        return node

    def conj(self, children: list[int]) -> int:
        if len(children) == 1:
            return children[0]
        return self._push(NODE_AND, 0, tuple(children))

    def disj(self, children: list[int], decision: int = 0) -> int:
        if len(children) == 1:
            return children[0]
        return self._push(NODE_OR, 0, tuple(children), decision)

    def true_node(self) -> int:
        return self._push(NODE_AND, 0, ())

    def false_node(self) -> int:
        return self._push(NODE_OR, 0, ())

    def finish(self, root: int) -> NnfDag:
        return NnfDag(self.kinds, self.lits, self.children,
                      self.num_vars, root, self.decisions)


class ResourceBudgetError(RuntimeError):
    pass


@dataclass(frozen=True)
class NnfReport:
    decomposable: bool
    deterministic: bool
    smooth: bool

    def all_ok(self) -> bool:
        return self.decomposable and self.deterministic and self.smooth


def _immediate_literals(dag: NnfDag, node: int) -> set[int]:
    if dag.kinds[node] == NODE_LIT:
        return {dag.lits[node]}
    if dag.kinds[node] == NODE_AND:
        return {dag.lits[c] for c in dag.children[node]
                if dag.kinds[c] == NODE_LIT}
    return set()


def validate(dag: NnfDag) -> NnfReport:
    """Check decomposability, decision-form determinism, and smoothness."""
    masks = dag.var_masks()
    decomposable = True
    deterministic = True
    smooth = True
    for i, kind in enumerate(dag.kinds):
        cs = dag.children[i]
        if kind == NODE_AND:
            acc = 0
            for c in cs:
                if acc & masks[c]:
                    decomposable = False
                    break
                acc |= masks[c]
        elif kind == NODE_OR:
            if len(cs) >= 2 and any(masks[c] != masks[cs[0]] for c in cs[1:]):
                smooth = False
            if len(cs) > 2:
                deterministic = False
            elif len(cs) == 2:
                left = _immediate_literals(dag, cs[0])
                right = _immediate_literals(dag, cs[1])
                if not any(-lit in right for lit in left):
                    deterministic = False
    return NnfReport(decomposable, deterministic, smooth)


def parse_nnf(text: str) -> NnfDag:
    """Parse the exchange format; node ids are line positions after the header."""
    header = None
    kinds: list[int] = []
    lits: list[int] = []
    children: list[tuple[int, ...]] = []
    decisions: list[int] = []

    def fail(lineno: int, msg: str):
        raise NnfFormatError(f"line {lineno}: {msg}")

    for lineno, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split()
        if not fields or fields[0] == "c":
            continue
        if header is None:
            if fields[0] != "nnf" or len(fields) != 4:
                fail(lineno, "expected header 'nnf <v> <e> <n>'")
            try:
                header = tuple(int(f) for f in fields[1:])
            except ValueError:
                fail(lineno, "non-numeric header field")
            continue
        node_id = len(kinds)
        declared_nodes = header[0]
        if node_id >= declared_nodes:
            fail(lineno, f"more than the declared {declared_nodes} nodes")
        if fields[0] == "L":
            if len(fields) != 2:
                fail(lineno, "literal line takes exactly one argument")
            try:
                lit = int(fields[1])
            except ValueError:
                fail(lineno, "non-numeric literal")
            if lit == 0 or abs(lit) > header[2]:
                fail(lineno, f"literal {lit} out of range for {header[2]} variables")
            kinds.append(NODE_LIT)
            lits.append(lit)
            children.append(())
            decisions.append(0)
        elif fields[0] in ("A", "O"):
            try:
                vals = [int(f) for f in fields[1:]]
            except ValueError:
                fail(lineno, "non-numeric argument")
            if fields[0] == "A":
                decision, count, ids = 0, vals[0] if vals else -1, vals[1:]
            else:
                if len(vals) < 2:
                    fail(lineno, "or-node line needs decision variable and child count")
                decision, count, ids = vals[0], vals[1], vals[2:]
            if count != len(ids) or count < 0:
                fail(lineno, "child count does not match child list")
            for child in ids:
                if child >= declared_nodes or child < 0:
                    fail(lineno, f"dangling child reference {child}")
                if child >= node_id:
                    fail(lineno, f"cyclic reference to node {child}")
            kinds.append(NODE_AND if fields[0] == "A" else NODE_OR)
            lits.append(0)
            children.append(tuple(ids))
            decisions.append(decision)
        else:
            fail(lineno, f"unknown line type {fields[0]!r}")

    if header is None:
        raise NnfFormatError("missing 'nnf' header")
    if len(kinds) != header[0]:
        raise NnfFormatError(
            f"header declares {header[0]} nodes, file has {len(kinds)}")
    dag = NnfDag(kinds, lits, children, header[2], decisions=decisions)
    if dag.edge_count != header[1]:
        raise NnfFormatError(
            f"header declares {header[1]} edges, file has {dag.edge_count}")
    return dag


def print_nnf(dag: NnfDag) -> str:
    lines = [f"nnf {dag.node_count} {dag.edge_count} {dag.num_vars}"]
    for i, kind in enumerate(dag.kinds):
        if kind == NODE_LIT:
            lines.append(f"L {dag.lits[i]}")
        elif kind == NODE_AND:
            ids = " ".join(str(c) for c in dag.children[i])
            lines.append(f"A {len(dag.children[i])}{' ' if ids else ''}{ids}")
        else:
            ids = " ".join(str(c) for c in dag.children[i])
            lines.append(f"O {dag.decisions[i]} {len(dag.children[i])}"
                         f"{' ' if ids else ''}{ids}")
    return "\n".join(lines) + "\n"


def _reachable(dag: NnfDag) -> list[int]:
    seen = [False] * dag.node_count
    seen[dag.root] = True
    for i in range(dag.root, -1, -1):
        if seen[i]:
            for c in dag.children[i]:
                seen[c] = True
    return [i for i, s in enumerate(seen) if s]


def restrict_to_reachable(dag: NnfDag) -> NnfDag:
    """Drop nodes unreachable from the root, preserving order."""
    keep = _reachable(dag)
    if len(keep) == dag.node_count:
        return dag
    remap = {old: new for new, old in enumerate(keep)}
    return NnfDag([dag.kinds[i] for i in keep],
                  [dag.lits[i] for i in keep],
                  [tuple(remap[c] for c in dag.children[i]) for i in keep],
                  dag.num_vars,
                  remap[dag.root],
                  [dag.decisions[i] for i in keep])


def smooth(dag: NnfDag, cover_all_vars: bool = True) -> NnfDag:
    """Insert (v | -v) gadgets so every OR's children mention equal variables.

    With cover_all_vars the root is additionally wrapped to mention every
    variable 1..num_vars, so the root valuation counts over the full
    variable set.  Returns the input unchanged when nothing is missing.
    """
    masks = dag.var_masks()
    all_mask = (1 << dag.num_vars) - 1
    root_is_false = dag.kinds[dag.root] == NODE_OR and not dag.children[dag.root]
    needs_work = cover_all_vars and masks[dag.root] != all_mask and not root_is_false
    if not needs_work:
        for i, kind in enumerate(dag.kinds):
            if kind == NODE_OR and len(dag.children[i]) >= 2:
                union = 0
                for c in dag.children[i]:
                    union |= masks[c]
                if any(masks[c] != union for c in dag.children[i]):
                    needs_work = True
                    break
    if not needs_work:
        return dag

    builder = NnfBuilder(dag.num_vars)
    gadgets: dict[int, int] = {}
    new_id: list[int] = []
    new_mask: list[int] = []

    def gadget(var: int) -> int:
        node = gadgets.get(var)
        if node is None:
            node = builder.disj([builder.literal(var), builder.literal(-var)],
                                decision=var)
            gadgets[var] = node
        return node

    def missing_vars(mask: int, target: int) -> list[int]:
        out = []
        bits = target & ~mask
        v = 1
        while bits:
            if bits & 1:
                out.append(v)
            bits >>= 1
            v += 1
        return out

    def wrap(node: int, mask: int, target: int) -> int:
        if mask == target:
            return node
        extra = [gadget(v) for v in missing_vars(mask, target)]
        if builder.kinds[node] == NODE_AND:
            return builder.conj(list(builder.children[node]) + extra)
        return builder.conj([node] + extra)

    for i, kind in enumerate(dag.kinds):
        if kind == NODE_LIT:
            new_id.append(builder.literal(dag.lits[i]))
            new_mask.append(masks[i])
        elif kind == NODE_AND:
            cs = [new_id[c] for c in dag.children[i]]
            new_id.append(builder.conj(cs) if len(cs) != 1 else
                          builder._push(NODE_AND, 0, tuple(cs)))
            new_mask.append(masks[i])
        else:
            cs = dag.children[i]
            if len(cs) < 2:
                node = builder._push(NODE_OR, 0,
                                     tuple(new_id[c] for c in cs),
                                     dag.decisions[i])
                new_id.append(node)
                new_mask.append(masks[i])
                continue
            union = 0
            for c in cs:
                union |= masks[c]
            wrapped = [wrap(new_id[c], masks[c], union) for c in cs]
            new_id.append(builder.disj(wrapped, dag.decisions[i]))
            new_mask.append(union)

    root = new_id[dag.root]
    if cover_all_vars and not root_is_false:
        root = wrap(root, new_mask[dag.root], all_mask)
    return restrict_to_reachable(builder.finish(root))
