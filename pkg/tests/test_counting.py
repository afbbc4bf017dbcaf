import random

import pytest

from anscount import oracle
from anscount.completion import build_completion
from anscount.compiler import compile_cnf
from anscount.counting import (CountingGraph, compress, evaluate, size_report)
from anscount.nnf import parse_nnf
from anscount.program import AssumptionSet, parse_program
from conftest import P1, P2, random_program_text
from test_nnf import FIG1, FIG1_VAR_ATOM, fig1_graph


def pipeline(text):
    program = parse_program(text)
    cnf = build_completion(program)
    graph = CountingGraph(compile_cnf(cnf), cnf.var_atom)
    return program, graph


def random_assumptions(rng, program, max_literals=3) -> AssumptionSet:
    atoms = list(range(program.num_atoms))
    rng.shuffle(atoms)
    chosen = atoms[:rng.randint(0, min(max_literals, len(atoms)))]
    true_ids = {a for a in chosen if rng.random() < 0.5}
    return AssumptionSet.of(true_ids, set(chosen) - true_ids)


def test_fig1_conditioning():
    graph = fig1_graph()
    assert graph.evaluate(AssumptionSet.of((), (2,))) == 1
    assert graph.evaluate(AssumptionSet()) == 2


def test_inconsistent_assumptions_short_circuit():
    _, graph = pipeline(P2)
    assert graph.evaluate(AssumptionSet.of((0,), (0,))) == 0


def test_unknown_atom_rejected():
    graph = fig1_graph()
    with pytest.raises(KeyError):
        graph.evaluate(AssumptionSet.of((9,), ()))


def test_refuses_invalid_dag():
    # Or with differing child variables fails validation
    bad = parse_nnf("nnf 3 2 2\nL 1\nL 2\nO 0 2 0 1\n")
    with pytest.raises(ValueError):
        CountingGraph(bad, [None, 0, 1])


def test_size_report():
    dag = parse_nnf(FIG1)
    report = size_report(dag)
    assert (report.node_count, report.edge_count) == (14, 13)
    single = parse_nnf("nnf 1 0 1\nL 1\n")
    assert (size_report(single).node_count, size_report(single).edge_count) \
        == (1, 0)


def test_compress_fig1():
    graph = fig1_graph()
    compressed = compress(graph)
    assert compressed.evaluate(AssumptionSet()) == 2
    assert compressed.evaluate(AssumptionSet.of((), (2,))) == 1
    # auxiliary literals x1 x2 x3 x5 are gone
    lits = set(compressed.lits)
    assert all(abs(l) <= 3 for l in lits)
    assert compressed.node_count <= graph.node_count
    assert compressed.stats.traversals <= 2


def test_compress_no_auxiliaries_is_structure_preserving():
    # completion of a program whose encoding needs no auxiliaries
    _, graph = pipeline("a :- b. b. c :- not a.")
    compressed = compress(graph)
    assert compressed.node_count == graph.node_count
    assert compressed.evaluate(AssumptionSet()) == \
        graph.evaluate(AssumptionSet())


def test_compress_internal_arity_invariant():
    from anscount.nnf import NODE_LIT

    rng = random.Random(59)
    for _ in range(40):
        program, graph = pipeline(random_program_text(rng))
        compressed = compress(graph)
        if compressed.constant is not None:
            continue
        for i in range(compressed.node_count):
            arity = compressed.offsets[i + 1] - compressed.offsets[i]
            if compressed.kinds[i] == NODE_LIT:
                assert graph.var_atom[abs(compressed.lits[i])] is not None
            else:
                assert arity >= 2


def test_compress_value_equality_under_assumptions():
    rng = random.Random(61)
    for _ in range(60):
        program, graph = pipeline(random_program_text(rng))
        compressed = compress(graph)
        assert compressed.evaluate(AssumptionSet()) == \
            graph.evaluate(AssumptionSet())
        for _ in range(20):
            assumptions = random_assumptions(rng, program)
            assert compressed.evaluate(assumptions) == \
                graph.evaluate(assumptions), program
        assert compressed.node_count <= graph.node_count


def test_evaluation_matches_oracle_supported_counts():
    rng = random.Random(67)
    for _ in range(50):
        text = random_program_text(rng, max_atoms=8, max_rules=14)
        program, graph = pipeline(text)
        compressed = compress(graph)
        for _ in range(10):
            assumptions = random_assumptions(rng, program)
            expected = oracle.count_under(program, assumptions, "supported")
            assert graph.evaluate(assumptions) == expected
            assert compressed.evaluate(assumptions) == expected


def test_unsatisfiable_program_compresses_to_constant_zero():
    _, graph = pipeline("a :- not a.")
    compressed = compress(graph)
    assert compressed.constant == 0
    assert compressed.evaluate(AssumptionSet()) == 0
    assert compressed.evaluate(AssumptionSet.of((0,), ())) == 0


def test_compressed_p1_golden_sizes():
    # frozen after the first build; regression guard for the running example
    _, graph = pipeline(P1)
    compressed = compress(graph)
    assert (graph.node_count, graph.edge_count) == (6, 5)
    assert (compressed.node_count, compressed.edge_count) == (6, 5)


def test_empty_program_counts_one():
    _, graph = pipeline("")
    compressed = compress(graph)
    assert graph.evaluate(AssumptionSet()) == 1
    assert compressed.evaluate(AssumptionSet()) == 1


def test_evaluation_visits_each_node_once():
    _, graph = pipeline(P2)
    count, visited = graph.evaluate_instrumented(AssumptionSet())
    assert visited == graph.node_count
    compressed = compress(graph)
    count2, visited2 = compressed.evaluate_instrumented(AssumptionSet())
    assert count2 == count
    assert visited2 == compressed.node_count


def test_module_level_evaluate_alias():
    _, graph = pipeline(P1)
    assert evaluate(graph) == 2


def test_concurrent_evaluations_match_sequential():
    from concurrent.futures import ThreadPoolExecutor

    rng = random.Random(229)
    program, graph = pipeline(P2)
    compressed = compress(graph)
    queries = [random_assumptions(rng, program) for _ in range(40)]
    sequential = [compressed.evaluate(a) for a in queries]
    with ThreadPoolExecutor(max_workers=8) as pool:
        concurrent = list(pool.map(compressed.evaluate, queries))
    assert concurrent == sequential


def test_kernels_agree():
    from array import array

    from anscount import _evalpy, kernel

    rng = random.Random(71)
    for _ in range(20):
        program, graph = pipeline(random_program_text(rng))
        assumptions = random_assumptions(rng, program)
        signs = graph._signs(assumptions)
        fast = kernel.evaluate_graph(graph.kinds, graph.lits, graph.children,
                                     graph.offsets, signs)
        slow = _evalpy.evaluate_graph(graph.kinds, graph.lits, graph.children,
                                      graph.offsets, signs)
        assert list(fast) == list(slow)
