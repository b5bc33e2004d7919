"""Pure-Python versions of the hot kernels.

The compiled module ``_ckernels`` exports the same names with the same
semantics; ``kernels`` picks one at import time.
"""
from __future__ import annotations

from math import gcd


def int_rank(rows, ncols):
    """Exact rank over ℚ of an integer matrix given as a list of rows.

    Rows are eliminated one at a time against a growing echelon basis; every
    new row is divided by its content so entries stay small.
    """
    basis = {}  # pivot column -> row (dict col -> value), pivot entry > 0
    for row in rows:
        r = {j: x for j, x in enumerate(row) if x}
        while r:
            j = min(r)
            b = basis.get(j)
            if b is None:
                g = 0
                for x in r.values():
                    g = gcd(g, x)
                if r[j] < 0:
                    g = -g
                basis[j] = {k: x // g for k, x in r.items()}
                break
            a, c = b[j], r[j]
            g = gcd(a, c)
            fa, fc = a // g, c // g
            new = {k: fa * x for k, x in r.items()}
            for k, x in b.items():
                v = new.get(k, 0) - fc * x
                if v:
                    new[k] = v
                else:
                    new.pop(k, None)
            r = new
    return len(basis)


def divides(a, b):
    """Componentwise ``a <= b`` for exponent tuples."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def find_divisor(leads, m):
    """Index of the first exponent vector in ``leads`` dividing ``m``, or -1."""
    for idx, lead in enumerate(leads):
        for x, y in zip(lead, m):
            if x > y:
                break
        else:
            return idx
    return -1
