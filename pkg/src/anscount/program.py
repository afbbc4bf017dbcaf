"""Ground normal logic programs: data model, parser, printer, assumptions.

A program is a finite set of rules ``h :- b1, ..., bm, not c1, ..., not cn.``
over propositional atoms.  Facts are rules with an empty body, constraints
are rules without a head.  Atoms are interned in order of first textual
occurrence, which fixes the CNF variable numbering downstream.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field


class ParseError(ValueError):
    """Syntax error with source position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Atom:
    id: int
    name: str


@dataclass(frozen=True)
class Rule:
    """One rule; ``head is None`` encodes a constraint."""

    head: int | None
    pos_body: frozenset[int]
    neg_body: frozenset[int]

    @property
    def is_fact(self) -> bool:
        return self.head is not None and not self.pos_body and not self.neg_body

    @property
    def is_constraint(self) -> bool:
        return self.head is None

    def body_size(self) -> int:
        return len(self.pos_body) + len(self.neg_body)


class Program:
    """Immutable ground normal program with an interned atom table."""

    def __init__(self, atoms: list[Atom], rules: list[Rule]):
        self.atoms = tuple(atoms)
        self.rules = tuple(rules)
        self._by_name = {a.name: a for a in self.atoms}
        for i, a in enumerate(self.atoms):
            if a.id != i:
                raise ValueError("atom ids must be contiguous 0..n-1")
        if len(self._by_name) != len(self.atoms):
            raise ValueError("atom names must be unique")
        for r in self.rules:
            for x in ({r.head} if r.head is not None else set()) | set(r.pos_body) | set(r.neg_body):
                if not (0 <= x < len(self.atoms)):
                    raise ValueError(f"rule references unknown atom id {x}")

    @property
    def num_atoms(self) -> int:
        return len(self.atoms)

    def atom_by_name(self, name: str) -> Atom:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"unknown atom name {name!r}") from None

    def name_of(self, atom_id: int) -> str:
        return self.atoms[atom_id].name

    def rules_with_head(self, atom_id: int) -> list[Rule]:
        return [r for r in self.rules if r.head == atom_id]

    def constraints(self) -> list[Rule]:
        return [r for r in self.rules if r.is_constraint]

    def __eq__(self, other) -> bool:
        return (isinstance(other, Program)
                and self.atoms == other.atoms and self.rules == other.rules)

    def __repr__(self) -> str:
        return f"Program(atoms={len(self.atoms)}, rules={len(self.rules)})"


@dataclass(frozen=True)
class AssumptionSet:
    """Signed atom assumptions: ``true_atoms`` asserted, ``false_atoms`` denied."""

    true_atoms: frozenset[int] = field(default_factory=frozenset)
    false_atoms: frozenset[int] = field(default_factory=frozenset)

    @staticmethod
    def of(true_atoms=(), false_atoms=()) -> "AssumptionSet":
        return AssumptionSet(frozenset(true_atoms), frozenset(false_atoms))

    def is_consistent(self) -> bool:
        return not (self.true_atoms & self.false_atoms)

    def union(self, other: "AssumptionSet") -> "AssumptionSet":
        return AssumptionSet(self.true_atoms | other.true_atoms,
                             self.false_atoms | other.false_atoms)

    def mentions(self, atom_id: int) -> bool:
        return atom_id in self.true_atoms or atom_id in self.false_atoms

    def __len__(self) -> int:
        return len(self.true_atoms) + len(self.false_atoms)


EMPTY_ASSUMPTIONS = AssumptionSet()


def check_consistent(assumptions: AssumptionSet) -> bool:
    """True iff no atom is assumed with both signs."""
    return assumptions.is_consistent()


def literals_of(program: Program) -> set[tuple[int, bool]]:
    """Both polarities of every atom, as (atom_id, sign) pairs."""
    out: set[tuple[int, bool]] = set()
    for a in program.atoms:
        out.add((a.id, True))
        out.add((a.id, False))
    return out


def parse_assumption_names(spec: str, program: Program) -> AssumptionSet:
    """Parse a comma list like ``a,-b,c`` against a program's atom names."""
    true_ids, false_ids = set(), set()
    for raw in spec.split(","):
        token = raw.strip()
        if not token:
            continue
        negative = token.startswith("-") or token.startswith("~")
        name = token[1:].strip() if negative else token
        atom = program.atom_by_name(name)
        (false_ids if negative else true_ids).add(atom.id)
    return AssumptionSet.of(true_ids, false_ids)


_IDENT = re.compile(r"[a-z][A-Za-z0-9_]*")
RESERVED = {"not"}


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def _advance(self, n: int) -> None:
        for ch in self.text[self.pos:self.pos + n]:
            if ch == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += n

    def _skip_noise(self) -> None:
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "%":
                end = self.text.find("\n", self.pos)
                self._advance((end if end >= 0 else len(self.text)) - self.pos)
            elif ch.isspace():
                self._advance(1)
            else:
                return

    def next(self) -> tuple[str, str, int, int]:
        """Return (kind, value, line, col); kind 'eof' at end of input."""
        self._skip_noise()
        if self.pos >= len(self.text):
            return ("eof", "", self.line, self.col)
        line, col = self.line, self.col
        rest = self.text[self.pos:]
        if rest.startswith(":-"):
            self._advance(2)
            return ("implied_by", ":-", line, col)
        ch = rest[0]
        if ch == ".":
            self._advance(1)
            return ("dot", ".", line, col)
        if ch == ",":
            self._advance(1)
            return ("comma", ",", line, col)
        m = _IDENT.match(rest)
        if m:
            word = m.group(0)
            self._advance(len(word))
            if word == "not":
                return ("not", word, line, col)
            return ("ident", word, line, col)
        raise ParseError(f"unexpected character {ch!r}", line, col)


class _ProgramBuilder:
    def __init__(self):
        self.atoms: list[Atom] = []
        self.index: dict[str, int] = {}
        self.rules: list[Rule] = []

    def intern(self, name: str) -> int:
        got = self.index.get(name)
        if got is not None:
            return got
        atom_id = len(self.atoms)
        self.atoms.append(Atom(atom_id, name))
        self.index[name] = atom_id
        return atom_id

    def fresh_name(self, stem: str) -> str:
        if stem not in self.index:
            return stem
        k = 2
        while f"{stem}{k}" in self.index:
            k += 1
        return f"{stem}{k}"

    def build(self) -> Program:
        return Program(self.atoms, self.rules)


def parse_program(text: str) -> Program:
    """Parse the ``.lp`` subset: one rule per ``.``-terminated statement."""
    tok = _Tokenizer(text)
    builder = _ProgramBuilder()
    kind, value, line, col = tok.next()
    while kind != "eof":
        head: int | None
        if kind == "ident":
            head = builder.intern(value)
            kind, value, line, col = tok.next()
        elif kind == "implied_by":
            head = None
        else:
            raise ParseError(f"expected atom or ':-', got {value!r}", line, col)

        pos_body: set[int] = set()
        neg_body: set[int] = set()
        if kind == "implied_by":
            while True:
                kind, value, line, col = tok.next()
                negated = kind == "not"
                if negated:
                    kind, value, line, col = tok.next()
                if kind != "ident":
                    raise ParseError(f"expected atom in body, got {value!r}", line, col)
                (neg_body if negated else pos_body).add(builder.intern(value))
                kind, value, line, col = tok.next()
                if kind == "comma":
                    continue
                break
        if kind != "dot":
            raise ParseError(f"expected '.' to end rule, got {value!r}", line, col)
        builder.rules.append(Rule(head, frozenset(pos_body), frozenset(neg_body)))
        kind, value, line, col = tok.next()
    return builder.build()


def print_program(program: Program) -> str:
    """Render a program back to parseable source text."""
    lines = []
    for r in program.rules:
        body = [program.name_of(a) for a in sorted(r.pos_body)]
        body += [f"not {program.name_of(a)}" for a in sorted(r.neg_body)]
        if r.head is None:
            lines.append(f":- {', '.join(body)}.")
        elif body:
            lines.append(f"{program.name_of(r.head)} :- {', '.join(body)}.")
        else:
            lines.append(f"{program.name_of(r.head)}.")
    return "\n".join(lines) + ("\n" if lines else "")
