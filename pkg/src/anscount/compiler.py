"""Internal CNF to smooth deterministic decomposable NNF compiler.

Recursive decision expansion over a static variable order with unit
propagation, connected-component decomposition of the residual clause
set, residual-formula caching, and false-branch pruning.  A smoothing
pass runs before returning, so the output always validates as sd-DNNF
and its root valuation counts models over the full variable set.

Deliberately not competitive with dedicated knowledge compilers; output
of those is a drop-in replacement via the nnf exchange format.
"""

from __future__ import annotations

import sys

from .completion import CnfDoc
from .nnf import NnfBuilder, NnfDag, ResourceBudgetError, restrict_to_reachable, smooth

DEFAULT_NODE_CAP = 10_000_000


def _canonical_clauses(cnf: CnfDoc) -> frozenset[tuple[int, ...]] | None:
    """Sorted-literal clause tuples; tautologies dropped; None on an empty clause."""
    out = set()
    for clause in cnf.clauses:
        lits = set(clause)
        if any(-l in lits for l in lits):
            continue
        if not lits:
            return None
        out.add(tuple(sorted(lits)))
    return frozenset(out)


def _propagate(clauses):
    """Exhaustive unit propagation.

    Returns (assigned literals as a sorted tuple, residual clause set),
    or None on conflict / derived empty clause.
    """
    assigned: dict[int, bool] = {}
    active = set(clauses)
    while True:
        units = sorted({c[0] for c in active if len(c) == 1})
        if not units:
            break
        for lit in units:
            var, val = abs(lit), lit > 0
            if assigned.get(var, val) != val:
                return None
            assigned[var] = val
        reduced = set()
        for clause in active:
            kept = []
            satisfied = False
            for lit in clause:
                val = assigned.get(abs(lit))
                if val is None:
                    kept.append(lit)
                elif (lit > 0) == val:
                    satisfied = True
                    break
            if satisfied:
                continue
            if not kept:
                return None
            reduced.add(tuple(kept))
        active = reduced
    lits = tuple(sorted((v if val else -v) for v, val in assigned.items()))
    return lits, frozenset(active)


def _components(clauses):
    """Partition a clause set by shared variables; sorted by smallest variable."""
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for clause in clauses:
        vs = [abs(l) for l in clause]
        for v in vs:
            parent.setdefault(v, v)
        for v in vs[1:]:
            parent[find(vs[0])] = find(v)
    groups: dict[int, set] = {}
    for clause in clauses:
        groups.setdefault(find(abs(clause[0])), set()).add(clause)
    return [frozenset(g) for _, g in
            sorted(groups.items(), key=lambda kv: min(min(abs(l) for l in c)
                                                      for c in kv[1]))]


def static_order(cnf: CnfDoc, heuristic: str = "index") -> list[int]:
    """Variable order: plain index order, or a min-degree elimination order."""
    if heuristic == "index":
        return list(range(1, cnf.num_vars + 1))
    if heuristic != "mindeg":
        raise ValueError(f"unknown order heuristic {heuristic!r}")
    adjacency: dict[int, set[int]] = {v: set() for v in range(1, cnf.num_vars + 1)}
    for clause in cnf.clauses:
        vs = sorted({abs(l) for l in clause})
        for i, v in enumerate(vs):
            for w in vs[i + 1:]:
                adjacency[v].add(w)
                adjacency[w].add(v)
    order = []
    remaining = set(adjacency)
    while remaining:
        v = min(remaining, key=lambda x: (len(adjacency[x] & remaining), x))
        order.append(v)
        remaining.discard(v)
    return order


def compile_cnf(cnf: CnfDoc, order: list[int] | str = "index",
                node_cap: int = DEFAULT_NODE_CAP) -> NnfDag:
    """Compile a CNF into a smooth deterministic decomposable NNF.

    An unsatisfiable input yields the designated false DAG (count 0).
    Raises ResourceBudgetError when more than node_cap nodes are created.
    """
    if isinstance(order, str):
        order = static_order(cnf, order)
    position = {v: i for i, v in enumerate(order)}
    builder = NnfBuilder(cnf.num_vars, node_cap=node_cap)
    memo: dict[frozenset, int | None] = {}

    clauses = _canonical_clauses(cnf)
    if clauses is None:
        return builder.finish(builder.false_node())

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * cnf.num_vars + 1000))
    try:
        root = _compile_rec(clauses, builder, memo, position)
    finally:
        sys.setrecursionlimit(limit)
    if root is None:
        return builder.finish(builder.false_node())
    dag = restrict_to_reachable(builder.finish(root))
    return smooth(dag)


def _compile_rec(clauses, builder, memo, position):
    if clauses in memo:
        return memo[clauses]
    result = _compile_uncached(clauses, builder, memo, position)
    memo[clauses] = result
    return result


def _compile_uncached(clauses, builder, memo, position):
    propagated = _propagate(clauses)
    if propagated is None:
        return None
    unit_lits, residual = propagated
    parts = [builder.literal(lit) for lit in unit_lits]
    if residual:
        for component in _components(residual):
            decision = min((abs(l) for c in component for l in c),
                           key=lambda v: position[v])
            pos = _compile_rec(component | {(decision,)}, builder, memo, position)
            neg = _compile_rec(component | {(-decision,)}, builder, memo, position)
            if pos is None and neg is None:
                return None
            if pos is None or neg is None:
                parts.append(pos if pos is not None else neg)
            else:
                parts.append(builder.disj([pos, neg], decision=decision))
    if not parts:
        return builder.true_node()
    return builder.conj(parts)
