"""Anytime inclusion-exclusion refinement toward the answer-set count.

The incremental count at depth d subtracts, then adds back, supported
model counts conditioned on every combination of up to d cycle
unsupported-constraints: odd levels subtract, even levels add.  Full
depth over an exhaustive catalog is exact; a fixpoint between
consecutive levels is exact as well.  Combinations whose literal set is
inconsistent (with the assumptions or among each other) contribute zero
and are skipped without a graph traversal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .depgraph import CycleCatalog, CycleConstraint
from .program import AssumptionSet

DEFAULT_TERM_CAP = 1_000_000


class RefinementBudgetError(RuntimeError):
    pass


@dataclass
class RefinementTrace:
    """Per-depth partial counts plus accounting for the cost model.

    partials[i] is the incremental count after alternation level i;
    level_evaluated/level_skipped[i] split level i's combinations into
    graph traversals and consistency-pruned zero terms.
    """

    partials: list[int]
    level_evaluated: list[int]
    level_skipped: list[int]
    terminated_at: int | None
    bound_kind: str  # "exact" | "upper" | "lower"
    requested_depth: int
    effective_depth: int
    catalog_size: int
    warnings: list[str] = field(default_factory=list)

    @property
    def count(self) -> int:
        return self.partials[-1]

    @property
    def evaluations_performed(self) -> int:
        return sum(self.level_evaluated)

    @property
    def evaluations_skipped(self) -> int:
        return sum(self.level_skipped)

    def export(self) -> str:
        """Line-oriented records, one per depth, then the final count."""
        lines = []
        for i, value in enumerate(self.partials):
            terms = self.level_evaluated[i] + self.level_skipped[i]
            lines.append(f"depth {i}: terms={terms} "
                         f"skipped={self.level_skipped[i]} partial={value}")
        lines.append(f"count={self.count} bound={self.bound_kind}")
        return "\n".join(lines) + "\n"


def _constraint_assumptions(constraint: CycleConstraint) -> AssumptionSet:
    return AssumptionSet(constraint.positive, constraint.supports)


def restrict_catalog(catalog: CycleCatalog,
                     assumptions: AssumptionSet) -> CycleCatalog:
    """Drop constraints whose literal set contradicts the assumptions.

    Dropped constraints can only produce zero terms (an unsatisfiable
    conjunction stays unsatisfiable under more assumptions), so every
    partial count is unchanged.
    """
    if not assumptions.is_consistent():
        raise ValueError("inconsistent assumptions")
    kept = tuple(c for c in catalog.constraints
                 if not (c.positive & assumptions.false_atoms)
                 and not (c.supports & assumptions.true_atoms))
    return CycleCatalog(catalog.mode, kept, catalog.source_tight,
                        restricted=True)


def refine(graph, catalog: CycleCatalog, assumptions: AssumptionSet,
           depth: int | None = None, *, end_on_add: bool = False,
           term_cap: int = DEFAULT_TERM_CAP,
           stop_at_fixpoint: bool = True) -> RefinementTrace:
    """Run the anytime refinement to the given alternation depth.

    depth=None means full depth (catalog size).  end_on_add rounds an odd
    depth up so the run ends on an add-operation.  The early exit fires
    when consecutive alternations agree, which already proves the exact
    count; stop_at_fixpoint=False disables it (used to inspect every
    partial).
    """
    if not assumptions.is_consistent():
        trace = RefinementTrace([0], [0], [0], None, "exact",
                                depth if depth is not None else 0, 0,
                                len(catalog))
        trace.warnings.append("inconsistent assumptions; count is 0")
        return trace

    n = len(catalog.constraints)
    requested = n if depth is None else depth
    if requested < 0:
        raise ValueError("depth must be >= 0")
    d = min(requested, n)
    if end_on_add and d % 2 == 1:
        d = min(d + 1, n)
    budget = sum(comb(n, i) for i in range(1, d + 1))
    if budget > term_cap:
        raise RefinementBudgetError(
            f"refinement needs {budget} terms, cap is {term_cap}")

    warnings: list[str] = []
    trivially_exact = catalog.source_tight or catalog.restricted
    if n == 0 and not trivially_exact:
        warnings.append("non-tight program with an empty cycle catalog; "
                        "the count is the supported-model count")

    positives = [c.positive for c in catalog.constraints]
    negatives = [c.supports for c in catalog.constraints]

    count = graph.evaluate(assumptions)
    partials = [count]
    level_evaluated = [0]
    level_skipped = [0]
    previous = 0  # sentinel: a zero supported count is already exact
    terminated_at: int | None = None
    levels_done = 0

    for level in range(1, d + 1):
        if stop_at_fixpoint and previous == count:
            terminated_at = len(partials) - 2 if len(partials) >= 2 else 0
            break
        previous = count
        level_sum = 0
        evaluated = skipped = 0
        for chosen in combinations(range(n), level):
            pos = set(assumptions.true_atoms)
            neg = set(assumptions.false_atoms)
            for k in chosen:
                pos.update(positives[k])
                neg.update(negatives[k])
            if pos & neg:
                skipped += 1
                continue
            level_sum += graph.evaluate(AssumptionSet.of(pos, neg))
            evaluated += 1
        count = count - level_sum if level % 2 == 1 else count + level_sum
        partials.append(count)
        level_evaluated.append(evaluated)
        level_skipped.append(skipped)
        levels_done = level

    if terminated_at is None and stop_at_fixpoint and len(partials) >= 2 \
            and partials[-1] == partials[-2]:
        terminated_at = len(partials) - 2

    exhaustive = catalog.mode == "exhaustive"
    if n == 0:
        bound = "exact" if trivially_exact else "upper"
    elif terminated_at is not None or levels_done == n:
        bound = "exact" if exhaustive else "upper"
    elif levels_done % 2 == 1:
        bound = "lower"
    else:
        bound = "upper"
    if bound == "upper" and count == 0:
        bound = "exact"  # counts are nonnegative, so an upper bound of 0 is tight
    if bound == "upper" and not exhaustive and (terminated_at is not None
                                                or levels_done == n):
        warnings.append("simple-cycle catalog: fixpoint value is an upper "
                        "bound unless simple cycles suffice")

    return RefinementTrace(partials, level_evaluated, level_skipped,
                           terminated_at, bound, requested, levels_done, n,
                           warnings)


def exact_count(graph, catalog: CycleCatalog,
                assumptions: AssumptionSet | None = None,
                term_cap: int = DEFAULT_TERM_CAP) -> int:
    """Full-depth refinement on an exhaustive catalog: the answer-set count."""
    if catalog.mode != "exhaustive":
        raise ValueError("exact counting requires an exhaustive cycle catalog")
    assumptions = assumptions or AssumptionSet()
    return refine(graph, catalog, assumptions, None, term_cap=term_cap).count
