"""Shared online phase: counting queries and facet reports over an artifact.

Both the CLI and the HTTP service go through these helpers, so their
results are identical by construction.  Counts stay Python ints here;
the transport layers render them as decimal strings.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .artifact import CompiledArtifact
from .inclexcl import DEFAULT_TERM_CAP, RefinementTrace, refine, restrict_catalog
from .program import AssumptionSet


def count_query(artifact: CompiledArtifact, assumptions: AssumptionSet,
                depth: int | None = None, *, end_on_add: bool = False,
                term_cap: int = DEFAULT_TERM_CAP,
                restrict: bool = True) -> RefinementTrace:
    """Refined count under assumptions; the catalog is pre-restricted by
    consistency with the assumptions (which never changes any partial)."""
    if not assumptions.is_consistent():
        return refine(artifact.graph, artifact.catalog, assumptions, depth)
    catalog = artifact.catalog
    if restrict:
        catalog = restrict_catalog(catalog, assumptions)
    return refine(artifact.graph, catalog, assumptions, depth,
                  end_on_add=end_on_add, term_cap=term_cap)


@dataclass(frozen=True)
class FacetEntry:
    atom: str
    count_true: int
    count_false: int
    bound_true: str
    bound_false: str
    ratio_true: str | None


@dataclass(frozen=True)
class FacetReport:
    depth: int | None
    entries: tuple[FacetEntry, ...]


def decimal_ratio(numerator: int, denominator: int, places: int = 6) -> str:
    """Exact-integer decimal rendering of numerator/denominator."""
    scaled = numerator * 10 ** places // denominator
    return f"{scaled // 10 ** places}.{scaled % 10 ** places:0{places}d}"


def facet_report(artifact: CompiledArtifact, assumptions: AssumptionSet,
                 depth: int | None = None, *,
                 term_cap: int = DEFAULT_TERM_CAP,
                 max_workers: int = 8) -> FacetReport:
    """Per free atom: counts with the atom assumed true resp. false.

    Free atoms are the user-visible atoms not mentioned by the current
    assumptions.  Entries are computed concurrently over the shared
    immutable graph and reported in atom order.
    """
    free = [atom for atom in range(artifact.original_atom_count)
            if not assumptions.mentions(atom)]

    def one(atom: int) -> FacetEntry:
        with_true = assumptions.union(AssumptionSet.of((atom,), ()))
        with_false = assumptions.union(AssumptionSet.of((), (atom,)))
        true_trace = count_query(artifact, with_true, depth, term_cap=term_cap)
        false_trace = count_query(artifact, with_false, depth, term_cap=term_cap)
        total = true_trace.count + false_trace.count
        ratio = decimal_ratio(true_trace.count, total) if total else None
        return FacetEntry(artifact.program.name_of(atom),
                          true_trace.count, false_trace.count,
                          true_trace.bound_kind, false_trace.bound_kind, ratio)

    if not free:
        return FacetReport(depth, ())
    with ThreadPoolExecutor(max_workers=min(max_workers, len(free))) as pool:
        entries = tuple(pool.map(one, free))
    return FacetReport(depth, entries)


def trace_json(trace: RefinementTrace) -> dict:
    """JSON-shaped trace with all counts as decimal strings."""
    return {
        "count": str(trace.count),
        "bound": trace.bound_kind,
        "depth": trace.effective_depth,
        "requested_depth": trace.requested_depth,
        "catalog_size": trace.catalog_size,
        "terminated_at": trace.terminated_at,
        "trace": [
            {"depth": i, "partial": str(value),
             "evaluated": trace.level_evaluated[i],
             "skipped": trace.level_skipped[i]}
            for i, value in enumerate(trace.partials)
        ],
        "warnings": list(trace.warnings),
    }
