import random
from math import comb

import pytest

from anscount import compile_program, oracle
from anscount.inclexcl import (RefinementBudgetError, exact_count, refine,
                               restrict_catalog)
from anscount.program import AssumptionSet, parse_program
from conftest import P1, P2, P3, P4, corpus
from test_counting import random_assumptions


def assumptions_by_name(artifact, spec):
    return artifact.parse_assumptions(spec)


def test_p3_depth_one_undercounts(artifacts):
    art = artifacts["P3"]
    trace = refine(art.graph, art.catalog, assumptions_by_name(art, "d"), 1)
    assert trace.partials == [4, 0]
    assert trace.count == 0
    assert trace.bound_kind == "lower"


def test_p3_depth_two_exact(artifacts):
    art = artifacts["P3"]
    trace = refine(art.graph, art.catalog, assumptions_by_name(art, "d"), 2)
    assert trace.partials == [4, 0, 1]
    assert trace.count == 1
    assert trace.bound_kind == "exact"


def test_p4_restricted_full_depth(artifacts):
    art = artifacts["P4"]
    assumptions = assumptions_by_name(art, "-a,b")
    restricted = restrict_catalog(art.catalog, assumptions)
    assert len(restricted) == 2
    trace = refine(art.graph, restricted, assumptions, stop_at_fixpoint=False)
    assert trace.partials == [0, 0, 0]
    assert trace.bound_kind == "exact"


def test_exact_count_examples(artifacts):
    assert exact_count(artifacts["P2"].graph, artifacts["P2"].catalog) == 2
    assert exact_count(artifacts["P1"].graph, artifacts["P1"].catalog) == 1
    assert exact_count(artifacts["P3"].graph, artifacts["P3"].catalog) == 2
    assert exact_count(artifacts["P4"].graph, artifacts["P4"].catalog) == 4


def test_exact_count_requires_exhaustive_mode():
    art = compile_program(P2, cycle_mode="simple")
    with pytest.raises(ValueError):
        exact_count(art.graph, art.catalog)


def test_restrict_catalog_examples(artifacts):
    art = artifacts["P4"]
    assumptions = assumptions_by_name(art, "-a,b")
    restricted = restrict_catalog(art.catalog, assumptions)
    names = {frozenset(art.program.name_of(a) for a in c.cycle)
             for c in restricted.constraints}
    assert names == {frozenset("bc"), frozenset("bcd")}
    # empty assumptions leave any catalog unchanged
    assert restrict_catalog(art.catalog, AssumptionSet()).constraints == \
        art.catalog.constraints


def test_restrict_drops_direct_contradiction(artifacts):
    art = artifacts["P2"]
    # catalog is {a,b} with support {c}; assuming c contradicts "not c"
    restricted = restrict_catalog(art.catalog,
                                  assumptions_by_name(art, "c"))
    assert len(restricted) == 0


def test_inconsistent_assumptions_yield_zero(artifacts):
    art = artifacts["P3"]
    trace = refine(art.graph, art.catalog, assumptions_by_name(art, "d,-d"))
    assert trace.count == 0
    assert trace.warnings


def test_depth_zero_is_supported_count(artifacts):
    art = artifacts["P3"]
    trace = refine(art.graph, art.catalog, AssumptionSet(), 0)
    assert trace.partials == [6]
    assert trace.bound_kind == "upper"


def test_end_on_add_rounds_odd_depth(artifacts):
    art = artifacts["P3"]
    trace = refine(art.graph, art.catalog, assumptions_by_name(art, "d"), 1,
                   end_on_add=True)
    assert trace.partials == [4, 0, 1]
    assert trace.effective_depth == 2


def test_budget_error():
    art = compile_program(P4, cycle_mode="exhaustive")
    with pytest.raises(RefinementBudgetError):
        refine(art.graph, art.catalog, AssumptionSet(), term_cap=3)


def test_trace_export_format(artifacts):
    art = artifacts["P3"]
    trace = refine(art.graph, art.catalog, assumptions_by_name(art, "d"), 2)
    lines = trace.export().splitlines()
    assert lines[0] == "depth 0: terms=0 skipped=0 partial=4"
    assert lines[1].startswith("depth 1: terms=2")
    assert lines[-1] == "count=1 bound=exact"


def test_cost_model_on_corpus():
    rng = random.Random(97)
    for text in corpus(25, seed=11):
        art = compile_program(text, cycle_mode="exhaustive")
        n = len(art.catalog)
        for depth in (0, 1, 2, None):
            trace = refine(art.graph, art.catalog,
                           random_assumptions(rng, art.program), depth,
                           stop_at_fixpoint=False)
            processed = trace.effective_depth
            expected = sum(comb(n, i) for i in range(1, processed + 1))
            assert trace.evaluations_performed + trace.evaluations_skipped \
                == expected


def test_exactness_against_oracle_on_corpus():
    rng = random.Random(103)
    for text in corpus(40, seed=13):
        program = parse_program(text)
        art = compile_program(text, cycle_mode="exhaustive")
        for _ in range(5):
            assumptions = random_assumptions(rng, program)
            expected = oracle.count_under(program, assumptions, "answer")
            assert exact_count(art.graph, art.catalog, assumptions) == \
                expected, text


def test_bonferroni_sandwich_on_corpus():
    for text in corpus(25, seed=17):
        program = parse_program(text)
        art = compile_program(text, cycle_mode="exhaustive")
        expected = oracle.count_under(program, AssumptionSet(), "answer")
        trace = refine(art.graph, art.catalog, AssumptionSet(),
                       stop_at_fixpoint=False)
        for depth, partial in enumerate(trace.partials):
            if depth % 2 == 0:
                assert partial >= expected, text
            else:
                assert partial <= expected, text


def test_termination_implies_oracle_equality():
    for text in corpus(30, seed=19):
        program = parse_program(text)
        art = compile_program(text, cycle_mode="exhaustive")
        trace = refine(art.graph, art.catalog, AssumptionSet(),
                       stop_at_fixpoint=False)
        expected = oracle.count_under(program, AssumptionSet(), "answer")
        for i in range(len(trace.partials) - 1):
            if trace.partials[i] == trace.partials[i + 1]:
                assert trace.partials[i] == expected, text


def test_restriction_never_changes_partials():
    rng = random.Random(107)
    for text in corpus(20, seed=23):
        art = compile_program(text, cycle_mode="exhaustive")
        assumptions = random_assumptions(rng, art.program)
        if not assumptions.is_consistent():
            continue
        full = refine(art.graph, art.catalog, assumptions,
                      stop_at_fixpoint=False)
        restricted_catalog = restrict_catalog(art.catalog, assumptions)
        restricted = refine(art.graph, restricted_catalog, assumptions,
                            stop_at_fixpoint=False)
        k = len(restricted.partials)
        assert restricted.partials == full.partials[:k]
        if len(full.partials) > k:
            assert all(p == restricted.partials[-1]
                       for p in full.partials[k:])
        assert restricted.count == full.count


def test_empty_catalog_on_nontight_program_warns():
    from anscount.depgraph import CycleCatalog

    art = compile_program(P1, cycle_mode="exhaustive")
    empty = CycleCatalog("exhaustive", (), source_tight=False)
    trace = refine(art.graph, empty, AssumptionSet())
    assert trace.count == 2  # supported-model count, possibly an over-count
    assert trace.bound_kind == "upper"
    assert any("supported-model" in w for w in trace.warnings)


def test_restricted_to_empty_catalog_is_exact(artifacts):
    # every constraint contradicts the assumptions, so all refinement terms
    # are zero and the supported count is already the answer count
    art = artifacts["P1"]
    assumptions = assumptions_by_name(art, "-c")
    restricted = restrict_catalog(art.catalog, assumptions)
    assert len(restricted) == 0
    trace = refine(art.graph, restricted, assumptions)
    assert trace.count == 1
    assert trace.bound_kind == "exact"
    assert not trace.warnings
