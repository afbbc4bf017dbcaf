import random

import pytest

from anscount import oracle
from anscount.depgraph import (CycleBudgetError, UnnormalizedSupportError,
                               build_depgraph, enumerate_cycles, export_catalog,
                               external_supports, is_tight, normalize_supports,
                               unsupported_constraint)
from anscount.program import parse_program
from conftest import P1, P2, P3, P4, random_program_text
from oracles import closed_walk_vertex_sets


def ids(program, names):
    return frozenset(program.atom_by_name(n).id for n in names)


def name_sets(program, sets):
    return {frozenset(program.name_of(a) for a in s) for s in sets}


def test_depgraph_edges_of_examples():
    p2 = parse_program(P2)
    graph = build_depgraph(p2)
    def e(x, y):
        return (p2.atom_by_name(x).id, p2.atom_by_name(y).id)
    assert graph.edges == frozenset((e("c", "a"), e("a", "b"), e("b", "a")))

    p1 = parse_program(P1)
    graph1 = build_depgraph(p1)
    def e1(x, y):
        return (p1.atom_by_name(x).id, p1.atom_by_name(y).id)
    assert graph1.edges == frozenset((e1("b", "a"), e1("c", "c")))

    p3 = parse_program(P3)
    graph3 = build_depgraph(p3)
    assert len({v for edge in graph3.edges for v in edge}) <= p3.num_atoms
    assert p3.num_atoms == 7
    expected = {("b", "a"), ("a", "b"), ("c", "a"),
                ("g", "b"), ("g", "f"), ("f", "e"), ("e", "f")}
    got = {(p3.name_of(x), p3.name_of(y)) for x, y in graph3.edges}
    assert got == expected


def test_constraints_contribute_no_edges():
    program = parse_program("a :- b. :- a, c.")
    graph = build_depgraph(program)
    assert graph.edges == frozenset(((1, 0),))


def test_is_tight():
    assert not is_tight(build_depgraph(parse_program(P1)))
    assert is_tight(build_depgraph(parse_program("a :- b.")))
    assert not is_tight(build_depgraph(parse_program(P4)))


def test_simple_cycles_of_examples():
    p2 = parse_program(P2)
    catalog = enumerate_cycles(build_depgraph(p2), p2, "simple")
    assert name_sets(p2, catalog.cycles()) == {frozenset("ab")}

    p3 = parse_program(P3)
    catalog3 = enumerate_cycles(build_depgraph(p3), p3, "simple")
    assert name_sets(p3, catalog3.cycles()) == {frozenset("ab"), frozenset("ef")}


def test_exhaustive_cycles_of_p4():
    p4 = parse_program(P4)
    catalog = enumerate_cycles(build_depgraph(p4), p4, "exhaustive")
    listed = {frozenset("ab"), frozenset("bc"), frozenset("cd"),
              frozenset("abc"), frozenset("abd"), frozenset("acd"),
              frozenset("bcd"), frozenset("abcd")}
    got = name_sets(p4, catalog.cycles())
    assert listed <= got
    assert got == listed | {frozenset("ad")}


def test_exhaustive_matches_closed_walk_oracle():
    rng = random.Random(73)
    for _ in range(60):
        program = parse_program(random_program_text(rng, max_atoms=6,
                                                    max_rules=10))
        graph = build_depgraph(program)
        expected = closed_walk_vertex_sets(program.num_atoms, graph.edges)
        try:
            catalog = enumerate_cycles(graph, program, "exhaustive", cap=2000)
        except UnnormalizedSupportError:
            normalized, _ = normalize_supports(program, "full")
            graph = build_depgraph(normalized)
            expected = closed_walk_vertex_sets(normalized.num_atoms,
                                               graph.edges)
            catalog = enumerate_cycles(graph, normalized, "exhaustive",
                                       cap=2000)
        assert set(catalog.cycles()) == expected


def test_simple_subset_of_exhaustive():
    rng = random.Random(79)
    for _ in range(40):
        program, _ = normalize_supports(
            parse_program(random_program_text(rng, max_atoms=6, max_rules=10)),
            "full")
        graph = build_depgraph(program)
        simple = enumerate_cycles(graph, program, "simple", cap=2000)
        exhaustive = enumerate_cycles(graph, program, "exhaustive", cap=2000)
        assert set(simple.cycles()) <= set(exhaustive.cycles())


def test_external_supports_of_examples():
    p2 = parse_program(P2)
    assert external_supports(p2, ids(p2, "ab")) == ids(p2, "c")
    p3 = parse_program(P3)
    assert external_supports(p3, ids(p3, "ab")) == ids(p3, "cg")
    assert external_supports(p3, ids(p3, "ef")) == ids(p3, "g")
    # a cycle with no incoming support rules
    p1 = parse_program(P1)
    assert external_supports(p1, ids(p1, "c")) == frozenset()


def test_external_supports_rejects_wide_bodies():
    program = parse_program("a :- b. b :- a. b :- c, not d. c. d.")
    with pytest.raises(UnnormalizedSupportError):
        external_supports(program, ids(program, "ab"))


def test_unsupported_constraint_literal_sets():
    p3 = parse_program(P3)
    c0 = unsupported_constraint(ids(p3, "ab"), ids(p3, "cg"))
    assert c0.positive == ids(p3, "ab")
    assert c0.negative == ids(p3, "cg")
    c1 = unsupported_constraint(ids(p3, "ef"), ids(p3, "g"))
    assert c1.negative == ids(p3, "g")
    solo = unsupported_constraint(frozenset((0,)), frozenset())
    assert solo.positive == frozenset((0,))
    with pytest.raises(ValueError):
        unsupported_constraint(frozenset((0, 1)), frozenset((1,)))


def test_normalize_splits_wide_support_body():
    program = parse_program("a :- b. b :- a. b :- c, not d. c. d.")
    normalized, record = normalize_supports(program, "minimal")
    assert len(record) == 1
    aux_id = record.added_atoms[0]
    aux_name = normalized.name_of(aux_id)
    assert external_supports(normalized, ids(normalized, "ab")) == \
        frozenset((aux_id,))
    original, definition, link = record.rewritten[0]
    assert definition.head == aux_id
    assert definition.pos_body == original.pos_body
    assert definition.neg_body == original.neg_body
    assert link.pos_body == frozenset((aux_id,))
    assert aux_name.startswith("b_sup")


def test_normalize_leaves_tight_programs_alone():
    program = parse_program("a :- b, c. b. c :- not b.")
    normalized, record = normalize_supports(program)
    assert normalized is program
    assert len(record) == 0


def test_normalize_leaves_p2_alone():
    program = parse_program(P2)
    normalized, record = normalize_supports(program)
    assert normalized is program
    assert len(record) == 0


def test_full_mode_splits_negative_and_fact_supports():
    # single-negative support body
    program = parse_program("a :- b. b :- a. b :- not d. d :- not b.")
    minimal, record_min = normalize_supports(program, "minimal")
    assert len(record_min) == 0
    full, record_full = normalize_supports(program, "full")
    assert len(record_full) == 1
    # fact supporting a cycle
    program2 = parse_program("a :- b. b :- a. b.")
    full2, record2 = normalize_supports(program2, "full")
    assert len(record2) == 1
    aux = record2.added_atoms[0]
    assert external_supports(full2, ids(full2, "ab")) == frozenset((aux,))


def test_normalization_preserves_counts():
    rng = random.Random(83)
    for _ in range(50):
        program = parse_program(random_program_text(rng, max_atoms=6,
                                                    max_rules=9))
        for mode in ("minimal", "full"):
            normalized, _ = normalize_supports(program, mode)
            if normalized.num_atoms > 16:
                continue
            assert len(oracle.enumerate_supported_models(normalized)) == \
                len(oracle.enumerate_supported_models(program))
            assert len(oracle.enumerate_answer_sets(normalized)) == \
                len(oracle.enumerate_answer_sets(program))


def test_cycle_constraint_correction_property():
    # answer sets = supported models of the program plus all unsupported
    # constraints from the exhaustive catalog of the normalized program
    from anscount.program import Program, Rule

    rng = random.Random(89)
    checked = 0
    while checked < 40:
        program = parse_program(random_program_text(rng, max_atoms=6,
                                                    max_rules=9))
        normalized, _ = normalize_supports(program, "full")
        if normalized.num_atoms > 16:
            continue
        try:
            catalog = enumerate_cycles(build_depgraph(normalized), normalized,
                                       "exhaustive", cap=2000)
        except CycleBudgetError:
            continue
        checked += 1
        extra = [Rule(None, c.positive, c.supports)
                 for c in catalog.constraints]
        extended = Program(list(normalized.atoms),
                           list(normalized.rules) + extra)
        assert oracle.enumerate_supported_models(extended) == \
            oracle.enumerate_answer_sets(normalized)


def test_cycle_cap_raises():
    text = " ".join(f"n{i} :- n{(i + 1) % 12}." for i in range(12)) \
        + " " + " ".join(f"n{(i + 1) % 12} :- n{i}." for i in range(12))
    program = parse_program(text)
    with pytest.raises(CycleBudgetError) as err:
        enumerate_cycles(build_depgraph(program), program, "exhaustive", cap=5)
    assert err.value.partial >= 5


def test_catalog_ordering_deterministic():
    p4 = parse_program(P4)
    catalog = enumerate_cycles(build_depgraph(p4), p4, "exhaustive")
    keys = [tuple(sorted(c.cycle)) for c in catalog.constraints]
    assert keys == sorted(keys)


def test_export_catalog_format():
    p3 = parse_program(P3)
    catalog = enumerate_cycles(build_depgraph(p3), p3, "simple")
    text = export_catalog(catalog, p3)
    assert text.splitlines() == ["c a b | c g", "c e f | g"]
