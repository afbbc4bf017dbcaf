"""Pure-Python valuation kernel: one conditioned post-order pass.

Mirrors the Cython kernel in _evalcore.pyx; selected as a fallback by
the kernel module when the extension is unavailable.
"""

from .nnf import NODE_AND, NODE_LIT

SIGN_FREE = 0
SIGN_TRUE = 1
SIGN_FALSE = 2


def evaluate_graph(kinds, lits, children, offsets, signs):
    """Value every node bottom-up; literals contradicted by signs count 0.

    kinds/lits/children/offsets are flat topologically ordered node arrays;
    signs[v] holds the assumption state of variable v.  Returns the list of
    per-node values (arbitrary-precision ints).
    """
    n = len(kinds)
    values = [0] * n
    for i in range(n):
        kind = kinds[i]
        if kind == NODE_LIT:
            lit = lits[i]
            if lit > 0:
                values[i] = 0 if signs[lit] == SIGN_FALSE else 1
            else:
                values[i] = 0 if signs[-lit] == SIGN_TRUE else 1
        elif kind == NODE_AND:
            acc = 1
            for j in range(offsets[i], offsets[i + 1]):
                acc *= values[children[j]]
                if acc == 0:
                    break
            values[i] = acc
        else:
            acc = 0
            for j in range(offsets[i], offsets[i + 1]):
                acc += values[children[j]]
            values[i] = acc
    return values
