"""Answer set counting under assumptions on compressed counting graphs.

Offline: parse a ground normal program, normalize cycle supports, build
Clark's completion, compile it into a smooth deterministic decomposable
NNF, and compress the counting graph.  Online: count supported models
under assumptions by conditioning, and refine toward the answer-set
count with an anytime inclusion-exclusion scheme over cycle
unsupported-constraints.
"""

from .artifact import (CompiledArtifact, compile_program, load_artifact,
                       save_artifact)
from .completion import CnfDoc, apply_assumptions, build_completion
from .compiler import compile_cnf
from .counting import CompressedGraph, CountingGraph, compress, evaluate, size_report
from .depgraph import (CycleCatalog, DepGraph, build_depgraph, enumerate_cycles,
                       external_supports, is_tight, normalize_supports,
                       unsupported_constraint)
from .inclexcl import RefinementTrace, exact_count, refine, restrict_catalog
from .kernel import KERNEL_NAME
from .navigation import count_query, facet_report
from .nnf import NnfDag, parse_nnf, print_nnf, smooth, validate
from .program import (AssumptionSet, Atom, Program, Rule, check_consistent,
                      literals_of, parse_program, print_program)

__version__ = "0.1.0"

__all__ = [
    "AssumptionSet", "Atom", "CnfDoc", "CompiledArtifact", "CompressedGraph",
    "CountingGraph", "CycleCatalog", "DepGraph", "KERNEL_NAME", "NnfDag",
    "Program", "RefinementTrace", "Rule", "apply_assumptions",
    "build_completion", "build_depgraph", "check_consistent", "compile_cnf",
    "compile_program", "compress", "count_query", "enumerate_cycles",
    "evaluate", "exact_count", "external_supports", "facet_report",
    "is_tight", "literals_of", "load_artifact", "normalize_supports",
    "parse_nnf", "parse_program", "print_nnf", "print_program", "refine",
    "restrict_catalog", "save_artifact", "size_report", "smooth",
    "unsupported_constraint", "validate",
]
