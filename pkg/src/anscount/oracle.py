"""Brute-force reference semantics for desk-scale testing.

Enumerates supported models and answer sets by definition over all 2^n
interpretations.  Deliberately naive; guarded so it can never silently
return a wrong count on an oversized input.
"""

from __future__ import annotations

from itertools import combinations

from .program import AssumptionSet, Program, Rule

SIZE_GUARD = 24


class SizeGuardError(ValueError):
    pass


def _guard(program: Program) -> None:
    if program.num_atoms > SIZE_GUARD:
        raise SizeGuardError(
            f"oracle limited to {SIZE_GUARD} atoms, got {program.num_atoms}")


def gl_reduct(program: Program, interpretation: frozenset[int]) -> Program:
    """Drop rules whose negative body intersects I, strip negation from the rest."""
    rules = [Rule(r.head, r.pos_body, frozenset())
             for r in program.rules if not (r.neg_body & interpretation)]
    return Program(list(program.atoms), rules)


def least_model(program: Program) -> frozenset[int] | None:
    """Least model of a negation-free program via fixpoint iteration.

    Constraint rules must hold in the least model of the definite part;
    returns None when they do not (no model exists above the fixpoint).
    """
    derived: set[int] = set()
    changed = True
    while changed:
        changed = False
        for r in program.rules:
            if r.head is not None and r.head not in derived and r.pos_body <= derived:
                derived.add(r.head)
                changed = True
    for r in program.rules:
        if r.is_constraint and r.pos_body <= derived:
            return None
    return frozenset(derived)


def satisfies(program: Program, interpretation: frozenset[int]) -> bool:
    for r in program.rules:
        if r.pos_body <= interpretation and not (r.neg_body & interpretation):
            if r.head is None or r.head not in interpretation:
                return False
    return True


def is_answer_set(program: Program, interpretation: frozenset[int]) -> bool:
    reduct = gl_reduct(program, interpretation)
    return least_model(reduct) == interpretation


def is_supported_model(program: Program, interpretation: frozenset[int]) -> bool:
    """Model of the completion: each atom holds iff some rule body derives it."""
    for r in program.rules:
        if r.is_constraint and r.pos_body <= interpretation \
                and not (r.neg_body & interpretation):
            return False
    for atom in range(program.num_atoms):
        supported = any(
            r.pos_body <= interpretation and not (r.neg_body & interpretation)
            for r in program.rules if r.head == atom)
        if (atom in interpretation) != supported:
            return False
    return True


def _interpretations(program: Program):
    atoms = range(program.num_atoms)
    for k in range(program.num_atoms + 1):
        for chosen in combinations(atoms, k):
            yield frozenset(chosen)


def enumerate_answer_sets(program: Program) -> set[frozenset[int]]:
    _guard(program)
    return {i for i in _interpretations(program) if is_answer_set(program, i)}


def enumerate_supported_models(program: Program) -> set[frozenset[int]]:
    _guard(program)
    return {i for i in _interpretations(program) if is_supported_model(program, i)}


def count_under(program: Program, assumptions: AssumptionSet,
                semantics: str = "answer") -> int:
    """Model count filtered by assumptions; inconsistent assumptions count 0."""
    _guard(program)
    if not assumptions.is_consistent():
        return 0
    if semantics == "answer":
        models = enumerate_answer_sets(program)
    elif semantics == "supported":
        models = enumerate_supported_models(program)
    else:
        raise ValueError(f"unknown semantics {semantics!r}")
    return sum(1 for m in models
               if assumptions.true_atoms <= m
               and not (assumptions.false_atoms & m))
