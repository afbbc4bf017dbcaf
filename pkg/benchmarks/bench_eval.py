#!/usr/bin/env python3
"""Benchmark the valuation kernels: compiled extension vs pure Python.

Compiles an n-queens instance, then times repeated conditioned counts on
the compressed graph with each kernel.  Run as:

    python benchmarks/bench_eval.py [--queens 8] [--rounds 2000]
"""

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from conftest import queens_program  # noqa: E402

from anscount import AssumptionSet, compile_program  # noqa: E402
from anscount import _evalpy  # noqa: E402


def time_kernel(graph, kernel_fn, assumptions, rounds):
    start = time.perf_counter()
    checksum = 0
    for signs in assumptions[:rounds]:
        values = kernel_fn(graph.kinds, graph.lits, graph.children,
                           graph.offsets, signs)
        checksum += values[graph.root]
    return time.perf_counter() - start, checksum


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--queens", type=int, default=8)
    parser.add_argument("--rounds", type=int, default=2000)
    args = parser.parse_args()

    text = queens_program(args.queens)
    start = time.perf_counter()
    artifact = compile_program(text, cycle_mode="simple")
    compile_seconds = time.perf_counter() - start
    graph = artifact.graph
    print(f"queens-{args.queens}: {artifact.original_atom_count} atoms, "
          f"graph {graph.node_count} nodes / {graph.edge_count} edges, "
          f"{artifact.supported_count} models, "
          f"compiled in {compile_seconds:.2f}s")

    rng = random.Random(7)
    atoms = artifact.original_atom_count
    prepared = []
    for _ in range(args.rounds):
        chosen = rng.sample(range(atoms), 3)
        true_ids = {a for a in chosen if rng.random() < 0.5}
        assumptions = AssumptionSet.of(true_ids, set(chosen) - true_ids)
        prepared.append(graph._signs(assumptions))

    kernels = [("python", _evalpy.evaluate_graph)]
    try:
        from anscount import _evalcore

        kernels.append(("cython", _evalcore.evaluate_graph))
    except ImportError:
        print("cython kernel not built; benchmarking pure Python only")

    results = {}
    for name, fn in kernels:
        seconds, checksum = time_kernel(graph, fn, prepared, args.rounds)
        results[name] = (seconds, checksum)
        per_eval = seconds / args.rounds * 1e6
        print(f"{name:>7}: {args.rounds} evaluations in {seconds:.3f}s "
              f"({per_eval:.1f} us/evaluation), checksum {checksum}")

    if len(results) == 2:
        assert results["python"][1] == results["cython"][1], \
            "kernels disagree"
        speedup = results["python"][0] / results["cython"][0]
        print(f"speedup: {speedup:.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
