"""Shared fixtures: the worked-example programs and a seeded random corpus."""

from __future__ import annotations

import random

import pytest

from anscount import (build_depgraph, compile_program, enumerate_cycles,
                      normalize_supports, parse_program)
from anscount.depgraph import CycleBudgetError

P1 = "a :- b. b. c :- c."

P2 = "a :- b. b :- a. a :- c. c :- not d. d :- not c."

P3 = P2 + " b :- g. f :- g. e :- f. f :- e."

P4 = """a :- b. b :- a. b :- c. c :- b.
a :- d. d :- a. c :- d. d :- c.
a :- g. b :- not h. c :- f. d :- not e.
e :- not g. g :- not e. f :- not h. h :- not f.
"""


@pytest.fixture(scope="session")
def artifacts():
    """Exhaustive-catalog artifacts of the worked examples, compiled once."""
    return {name: compile_program(text, cycle_mode="exhaustive")
            for name, text in
            [("P1", P1), ("P2", P2), ("P3", P3), ("P4", P4)]}


def random_program_text(rng: random.Random, max_atoms: int = 10,
                        max_rules: int = 20) -> str:
    """Random ground normal program, biased toward positive cycles."""
    num_atoms = rng.randint(2, max_atoms)
    atoms = [f"x{i}" for i in range(num_atoms)]
    num_rules = rng.randint(1, max_rules)
    lines = []
    for _ in range(num_rules):
        head = None if rng.random() < 0.08 else rng.choice(atoms)
        pos_size = rng.choices((0, 1, 2, 3), weights=(30, 45, 20, 5))[0]
        neg_size = rng.choices((0, 1, 2), weights=(55, 35, 10))[0]
        if head is None and pos_size + neg_size == 0:
            pos_size = 1
        body = [rng.choice(atoms) for _ in range(pos_size)]
        body += [f"not {rng.choice(atoms)}" for _ in range(neg_size)]
        if head is None:
            lines.append(f":- {', '.join(body)}.")
        elif body:
            lines.append(f"{head} :- {', '.join(body)}.")
        else:
            lines.append(f"{head}.")
    return "\n".join(lines) + "\n"


def corpus(count: int, seed: int = 20240, max_atoms: int = 10,
           max_rules: int = 20, max_cycles: int = 9) -> list[str]:
    """Deterministic random corpus; programs with huge exhaustive cycle
    catalogs are resampled so full-depth refinement stays desk-scale."""
    rng = random.Random(seed)
    out: list[str] = []
    while len(out) < count:
        text = random_program_text(rng, max_atoms, max_rules)
        try:
            program, _ = normalize_supports(parse_program(text), "full")
            enumerate_cycles(build_depgraph(program), program, "exhaustive",
                             cap=max_cycles)
        except CycleBudgetError:
            continue
        out.append(text)
    return out


def queens_program(n: int = 8) -> str:
    """n-queens as a ground normal program: negation-based choice pairs,
    one at-least-one support atom per row, pairwise exclusion constraints."""
    lines = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            lines.append(f"q_{i}_{j} :- not nq_{i}_{j}.")
            lines.append(f"nq_{i}_{j} :- not q_{i}_{j}.")
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            lines.append(f"hasq_{i} :- q_{i}_{j}.")
        lines.append(f":- not hasq_{i}.")
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(j + 1, n + 1):
                lines.append(f":- q_{i}_{j}, q_{i}_{k}.")
    for j in range(1, n + 1):
        for i in range(1, n + 1):
            for k in range(i + 1, n + 1):
                lines.append(f":- q_{i}_{j}, q_{k}_{j}.")
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(i + 1, n + 1):
                for l in range(1, n + 1):
                    if abs(i - k) == abs(j - l) and l != j:
                        lines.append(f":- q_{i}_{j}, q_{k}_{l}.")
    return "\n".join(lines) + "\n"
