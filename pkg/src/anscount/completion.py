"""Clark's completion of a program as a CNF document.

The encoding preserves the supported-model count: models of the CNF
projected to program-atom variables are exactly the supported models,
and every projection extends uniquely to the auxiliary variables
(each auxiliary is defined by a biimplication with one rule body).

Variable layout: program atoms occupy 1..n in atom-id order, auxiliary
variables follow in deterministic (atom, rule) order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .program import AssumptionSet, Program


@dataclass
class CnfDoc:
    num_vars: int
    clauses: list[tuple[int, ...]]
    num_program_vars: int
    # var -> atom id for program variables (vars 1..num_program_vars), None for auxiliaries
    var_atom: list[int | None] = field(default_factory=list)
    # aux var -> body literals it abbreviates (DIMACS literals), for audits
    aux_defs: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def is_program_var(self, var: int) -> bool:
        return 1 <= var <= self.num_program_vars

    def copy(self) -> "CnfDoc":
        return CnfDoc(self.num_vars, list(self.clauses), self.num_program_vars,
                      list(self.var_atom), dict(self.aux_defs))


def build_completion(program: Program) -> CnfDoc:
    """Encode compl(program) in CNF.

    Per atom with defining rules r_1..r_k: no rules emits the unit (-a);
    a fact among them forces the unit (a) and suppresses the disjunction;
    otherwise each body becomes a term (its single literal, or a fresh
    auxiliary x with x <-> body) and the equivalence a <-> t_1 v ... v t_k
    is emitted clause by clause.  Constraints emit the single clause -BF(r).
    """
    n = program.num_atoms
    var_atom: list[int | None] = [None] * (n + 1)
    for a in program.atoms:
        var_atom[a.id + 1] = a.id
    next_var = n + 1
    clauses: list[tuple[int, ...]] = []
    aux_defs: dict[int, tuple[int, ...]] = {}

    def body_literals(rule) -> list[int]:
        return ([a + 1 for a in sorted(rule.pos_body)]
                + [-(a + 1) for a in sorted(rule.neg_body)])

    for atom in range(n):
        head_var = atom + 1
        defining = [r for r in program.rules if r.head == atom]
        if not defining:
            clauses.append((-head_var,))
            continue
        terms: list[int] = []
        forced = False
        for rule in defining:
            lits = body_literals(rule)
            if not lits:
                forced = True
                continue
            if len(lits) == 1:
                terms.append(lits[0])
                continue
            aux = next_var
            next_var += 1
            var_atom.append(None)
            aux_defs[aux] = tuple(lits)
            for lit in lits:
                clauses.append((-aux, lit))
            clauses.append(tuple([aux] + [-lit for lit in lits]))
            terms.append(aux)
        if forced:
            clauses.append((head_var,))
            continue
        clauses.append(tuple([-head_var] + terms))
        for t in terms:
            clauses.append((head_var, -t))

    for rule in program.constraints():
        lits = body_literals(rule)
        clauses.append(tuple(-lit for lit in lits))

    return CnfDoc(next_var - 1, clauses, n, var_atom, aux_defs)


def apply_assumptions(cnf: CnfDoc, assumptions: AssumptionSet) -> CnfDoc:
    """Return cnf plus one unit clause per assumption literal."""
    if not assumptions.is_consistent():
        raise ValueError("inconsistent assumptions")
    out = cnf.copy()
    for atom in sorted(assumptions.true_atoms):
        out.clauses.append((atom + 1,))
    for atom in sorted(assumptions.false_atoms):
        out.clauses.append((-(atom + 1),))
    return out


def to_dimacs(cnf: CnfDoc) -> str:
    lines = [f"p cnf {cnf.num_vars} {len(cnf.clauses)}"]
    lines += [" ".join(str(l) for l in clause) + " 0" for clause in cnf.clauses]
    return "\n".join(lines) + "\n"


def to_varmap(cnf: CnfDoc, program: Program) -> str:
    """Sidecar map: 'v <var> <atom-name>' for program vars, 'x <var>' for auxiliaries."""
    lines = []
    for var in range(1, cnf.num_vars + 1):
        atom = cnf.var_atom[var]
        if atom is not None:
            lines.append(f"v {var} {program.name_of(atom)}")
        else:
            lines.append(f"x {var}")
    return "\n".join(lines) + "\n"
