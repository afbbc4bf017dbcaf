"""Positive dependency graphs, cycle catalogs, external supports, normalization.

The positive dependency digraph has an edge b -> h for every rule with
head h and b in its positive body.  A cycle vertex set is any atom set
whose induced subgraph is strongly connected with at least one edge
(exactly the vertex sets of closed walks); simple mode restricts to
vertex sets of elementary circuits, which scales but can under-constrain
the refinement.  The unsupported constraint of a cycle C with external
supports S forbids all of C true while all of S is false.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from .program import Atom, Program, Rule


class CycleBudgetError(RuntimeError):
    """Cycle enumeration exceeded its cap; carries the partial count."""

    def __init__(self, cap: int, partial: int):
        super().__init__(f"cycle budget exhausted: more than {cap} cycles "
                         f"(found {partial} before aborting)")
        self.cap = cap
        self.partial = partial


class UnnormalizedSupportError(ValueError):
    pass


DEFAULT_CYCLE_CAP = 10_000


@dataclass(frozen=True)
class DepGraph:
    num_atoms: int
    edges: frozenset[tuple[int, int]]

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(self.num_atoms))
        g.add_edges_from(self.edges)
        return g


def build_depgraph(program: Program) -> DepGraph:
    """Edges (b, h) for b in B+(r), h = H(r); constraints contribute none."""
    edges = {(b, r.head) for r in program.rules if r.head is not None
             for b in r.pos_body}
    return DepGraph(program.num_atoms, frozenset(edges))


def is_tight(graph: DepGraph) -> bool:
    """True iff the graph has no directed cycle (self-loops count as cycles)."""
    if any(a == b for a, b in graph.edges):
        return False
    return nx.is_directed_acyclic_graph(graph.to_networkx())


def _simple_cycle_sets(graph: DepGraph, cap: int) -> list[frozenset[int]]:
    seen: set[frozenset[int]] = set()
    for cycle in nx.simple_cycles(graph.to_networkx()):
        vertex_set = frozenset(cycle)
        if vertex_set in seen:
            continue
        seen.add(vertex_set)
        if len(seen) > cap:
            raise CycleBudgetError(cap, len(seen) - 1)
    return sorted(seen, key=lambda s: tuple(sorted(s)))


def _exhaustive_cycle_sets(graph: DepGraph, cap: int,
                           work_cap: int = 4_000_000) -> list[frozenset[int]]:
    """All vertex sets inducing a strongly connected subgraph with >= 1 edge.

    Enumerates subsets within each strongly connected component; any
    qualifying set lies inside one.  Aborts on the cycle cap, or on a work
    cap when an SCC is too large to sweep.
    """
    g = graph.to_networkx()
    succ = {v: set(g.successors(v)) for v in g}
    found: list[frozenset[int]] = []
    for component in nx.strongly_connected_components(g):
        members = sorted(component)
        if len(members) == 1:
            v = members[0]
            if (v, v) in graph.edges:
                found.append(frozenset((v,)))
            continue
        if 2 ** len(members) > work_cap:
            raise CycleBudgetError(cap, len(found))
        for size in range(1, len(members) + 1):
            for subset in combinations(members, size):
                if size == 1:
                    if (subset[0], subset[0]) in graph.edges:
                        found.append(frozenset(subset))
                        if len(found) > cap:
                            raise CycleBudgetError(cap, len(found) - 1)
                    continue
                chosen = set(subset)
                sub = nx.DiGraph()
                sub.add_nodes_from(subset)
                for v in subset:
                    sub.add_edges_from((v, w) for w in succ[v] & chosen)
                if nx.is_strongly_connected(sub):
                    found.append(frozenset(subset))
                    if len(found) > cap:
                        raise CycleBudgetError(cap, len(found) - 1)
    return sorted(found, key=lambda s: tuple(sorted(s)))


@dataclass(frozen=True)
class CycleConstraint:
    """One cycle with its external supports and unsupported-constraint body."""

    cycle: frozenset[int]
    supports: frozenset[int]

    @property
    def positive(self) -> frozenset[int]:
        return self.cycle

    @property
    def negative(self) -> frozenset[int]:
        return self.supports


@dataclass(frozen=True)
class CycleCatalog:
    mode: str  # "simple" | "exhaustive"
    constraints: tuple[CycleConstraint, ...]
    source_tight: bool
    # True when assumption-inconsistent constraints were dropped; their
    # refinement terms are provably zero, so nothing was lost.
    restricted: bool = False

    def __len__(self) -> int:
        return len(self.constraints)

    def cycles(self) -> list[frozenset[int]]:
        return [c.cycle for c in self.constraints]


def qualifying_support_rules(program: Program, cycle: frozenset[int]) -> list[Rule]:
    """Rules with head inside the cycle and positive body disjoint from it."""
    return [r for r in program.rules
            if r.head is not None and r.head in cycle
            and not (r.pos_body & cycle)]


def external_supports(program: Program, cycle: frozenset[int],
                      check_normalized: bool = True) -> frozenset[int]:
    """All positive-body atoms of rules that can support the cycle from outside.

    Multi-literal supporting bodies must have been normalized away first;
    a single positive atom stands for the whole body condition.
    """
    supports: set[int] = set()
    for rule in qualifying_support_rules(program, cycle):
        if check_normalized and rule.body_size() >= 2:
            names = sorted(program.name_of(a) for a in cycle)
            raise UnnormalizedSupportError(
                f"rule supporting cycle {{{', '.join(names)}}} has a "
                f"{rule.body_size()}-literal body; run support normalization first")
        supports.update(rule.pos_body)
    return frozenset(supports)


def unsupported_constraint(cycle: frozenset[int],
                           supports: frozenset[int]) -> CycleConstraint:
    """Body literal set of the constraint forbidding the cycle without support."""
    if cycle & supports:
        raise ValueError("cycle and external supports must be disjoint")
    return CycleConstraint(cycle, supports)


def enumerate_cycles(graph: DepGraph, program: Program, mode: str = "simple",
                     cap: int = DEFAULT_CYCLE_CAP) -> CycleCatalog:
    """Cycle catalog with per-cycle external supports and constraint bodies."""
    if mode == "simple":
        cycle_sets = _simple_cycle_sets(graph, cap)
    elif mode == "exhaustive":
        cycle_sets = _exhaustive_cycle_sets(graph, cap)
    else:
        raise ValueError(f"unknown cycle mode {mode!r}")
    constraints = tuple(
        unsupported_constraint(c, external_supports(program, c))
        for c in cycle_sets)
    return CycleCatalog(mode, constraints, is_tight(graph))


@dataclass(frozen=True)
class SupportNormalization:
    """Record of rule splits: original rule -> (definition rule, link rule)."""

    added_atoms: tuple[int, ...] = ()
    rewritten: tuple[tuple[Rule, Rule, Rule], ...] = ()

    def __len__(self) -> int:
        return len(self.rewritten)


def _atomic_support_body(rule: Rule) -> bool:
    return len(rule.pos_body) == 1 and not rule.neg_body


def _needs_split(rule: Rule, graph: DepGraph, mode: str) -> bool:
    """Does some cycle C contain the head while the positive body avoids C?

    Equivalent test, with no enumeration: the head lies on a cycle of the
    subgraph induced on atoms outside the positive body.
    """
    if rule.head is None or rule.head in rule.pos_body:
        return False
    if mode == "minimal":
        if rule.body_size() < 2:
            return False
    elif _atomic_support_body(rule):
        return False
    g = nx.DiGraph()
    g.add_nodes_from(range(graph.num_atoms))
    g.add_edges_from((a, b) for a, b in graph.edges
                     if a not in rule.pos_body and b not in rule.pos_body)
    if g.has_edge(rule.head, rule.head):
        return True
    for component in nx.strongly_connected_components(g):
        if rule.head in component:
            return len(component) >= 2
    return False


def normalize_supports(program: Program, mode: str = "full") -> tuple[Program, SupportNormalization]:
    """Split cycle-supporting rules so each support body is a single atom.

    Each qualifying rule h <- body becomes aux <- body and h <- aux; the
    auxiliary is functionally determined by the body, so supported-model
    (and answer-set) counts are preserved.  Mode "minimal" splits only
    bodies with >= 2 literals; mode "full" also splits single-negative
    bodies and facts, which exact counting over cycles requires.
    """
    if mode not in ("minimal", "full"):
        raise ValueError(f"unknown normalization mode {mode!r}")
    graph = build_depgraph(program)
    split_idx = {i for i, r in enumerate(program.rules)
                 if _needs_split(r, graph, mode)}
    if not split_idx:
        return program, SupportNormalization()

    atoms = list(program.atoms)
    names = {a.name for a in atoms}
    rules: list[Rule] = []
    rewritten = []
    added = []
    counters: dict[int, int] = {}
    for i, rule in enumerate(program.rules):
        if i not in split_idx:
            rules.append(rule)
            continue
        index = counters.get(rule.head, 0) + 1
        counters[rule.head] = index
        stem = f"{program.name_of(rule.head)}_sup{index}"
        name = stem
        k = 1
        while name in names:
            k += 1
            name = f"{stem}_{k}"
        names.add(name)
        aux = Atom(len(atoms), name)
        atoms.append(aux)
        added.append(aux.id)
        definition = Rule(aux.id, rule.pos_body, rule.neg_body)
        link = Rule(rule.head, frozenset((aux.id,)), frozenset())
        rules.extend((definition, link))
        rewritten.append((rule, definition, link))
    return (Program(atoms, rules),
            SupportNormalization(tuple(added), tuple(rewritten)))


def export_catalog(catalog: CycleCatalog, program: Program) -> str:
    """Line format: 'c <atoms...> | <supports...>' with atom names."""
    lines = []
    for constraint in catalog.constraints:
        cycle = " ".join(sorted(program.name_of(a) for a in constraint.cycle))
        supports = " ".join(sorted(program.name_of(a) for a in constraint.supports))
        lines.append(f"c {cycle} | {supports}".rstrip())
    return "\n".join(lines) + ("\n" if lines else "")
