# cython: boundscheck=False, wraparound=False
"""Cython valuation kernel: one conditioned post-order pass over flat arrays.

Node values are Python ints (counts overflow any fixed width), so the win
over the pure-Python kernel comes from removing interpreter loop overhead,
not from C arithmetic.
"""

SIGN_FREE = 0
SIGN_TRUE = 1
SIGN_FALSE = 2


def evaluate_graph(const signed char[:] kinds, const int[:] lits,
                   const int[:] children, const int[:] offsets,
                   const signed char[:] signs):
    cdef Py_ssize_t n = kinds.shape[0]
    cdef Py_ssize_t i, j, start, end
    cdef int lit
    cdef signed char kind
    cdef object acc
    values = [0] * n
    for i in range(n):
        kind = kinds[i]
        if kind == 0:  # literal
            lit = lits[i]
            if lit > 0:
                values[i] = 0 if signs[lit] == 2 else 1
            else:
                values[i] = 0 if signs[-lit] == 1 else 1
        elif kind == 1:  # and
            acc = 1
            start = offsets[i]
            end = offsets[i + 1]
            for j in range(start, end):
                acc = acc * values[children[j]]
                if acc == 0:
                    break
            values[i] = acc
        else:  # or
            acc = 0
            start = offsets[i]
            end = offsets[i + 1]
            for j in range(start, end):
                acc = acc + values[children[j]]
            values[i] = acc
    return values
