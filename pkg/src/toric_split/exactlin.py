"""Exact integer linear algebra.

Everything here works over Python integers; nothing is ever converted to
floating point. Matrices are small (tens of rows and columns), so the
algorithms favour clarity over asymptotics.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .kernels import int_rank

__all__ = [
    "IntMatrix",
    "LatticeBasis",
    "hermite_normal_form",
    "kernel_basis",
    "smith_normal_form",
    "is_saturated_sublattice",
    "rank",
    "solve_rational",
    "feasible_nonnegative",
]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored as a tuple of row tuples."""

    data: tuple[tuple[int, ...], ...]
    ncols: int

    def __post_init__(self):
        for row in self.data:
            if len(row) != self.ncols:
                raise ValueError("ragged matrix")
            for x in row:
                if not isinstance(x, int):
                    raise TypeError(f"non-integer entry {x!r}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        return cls(data, ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(tuple((0,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.data)

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(x for row in self.data for x in row)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(self.columns()), self.nrows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = other.columns()
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.data),
            other.ncols,
        )

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product ``M v``."""
        if len(v) != self.ncols:
            raise ValueError("shape mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.data)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return IntMatrix(tuple(a + b for a, b in zip(self.data, other.data)), self.ncols + other.ncols)

    def to_json(self) -> str:
        return json.dumps([[str(x) for x in r] for r in self.data])

    @classmethod
    def from_json(cls, text: str) -> "IntMatrix":
        rows = json.loads(text)
        return cls.from_rows([[int(x) for x in r] for r in rows], len(rows[0]) if rows else 0)

    def __str__(self):
        return "\n".join(" ".join(f"{x:>3}" for x in r) for r in self.data)


@dataclass(frozen=True)
class LatticeBasis:
    """A ℤ-basis of a sublattice of ℤ^ambient_rank."""

    ambient_rank: int
    vectors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for v in self.vectors:
            if len(v) != self.ambient_rank:
                raise ValueError("vector length differs from ambient rank")

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def as_matrix(self) -> IntMatrix:
        return IntMatrix(self.vectors, self.ambient_rank)


def _as_matrix(M) -> IntMatrix:
    if isinstance(M, IntMatrix):
        return M
    return IntMatrix.from_rows(M)


def hermite_normal_form(M) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ M == H``. Pivots are
    positive and the entries above a pivot lie in ``[0, pivot)``. Zero rows
    collect at the bottom.
    """
    M = _as_matrix(M)
    m, n = M.nrows, M.ncols
    A = [list(r) for r in M.data]
    U = [[int(i == j) for j in range(m)] for i in range(m)]

    def add_row(dst, src, q):
        # row[dst] -= q * row[src]
        if q:
            A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def swap(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]

    r = 0
    for j in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][j]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][j]))
            swap(r, piv)
            done = True
            for i in range(r + 1, m):
                if A[i][j]:
                    add_row(i, r, A[i][j] // A[r][j])
                    if A[i][j]:
                        done = False
            if done:
                break
        if not A[r][j]:
            continue
        if A[r][j] < 0:
            A[r] = [-x for x in A[r]]
            U[r] = [-x for x in U[r]]
        p = A[r][j]
        for i in range(r):
            add_row(i, r, A[i][j] // p)
        r += 1
    return IntMatrix.from_rows(A, n), IntMatrix.from_rows(U, m)


def rank(M) -> int:
    """Rank over the rationals."""
    M = _as_matrix(M)
    return int_rank([list(r) for r in M.data], M.ncols)


def kernel_basis(M) -> LatticeBasis:
    """Basis of the full integer kernel ``{v : M v = 0}``.

    The basis is put in canonical form: Hermite normal form of the kernel
    lattice, rows sorted lexicographically.
    """
    M = _as_matrix(M)
    n = M.ncols
    if M.nrows == 0:
        return LatticeBasis(n, tuple(IntMatrix.identity(n).data))
    H, U = hermite_normal_form(M.transpose())
    vecs = [U.data[i] for i in range(H.nrows) if not any(H.data[i])]
    if not vecs:
        return LatticeBasis(n, ())
    Hk, _ = hermite_normal_form(IntMatrix(tuple(vecs), n))
    rows = sorted(r for r in Hk.data if any(r))
    return LatticeBasis(n, tuple(rows))


def smith_normal_form(M) -> tuple[IntMatrix, list[int]]:
    """Smith normal form ``D`` and its nonzero invariant factors ``d1 | d2 | ...``."""
    M = _as_matrix(M)
    m, n = M.nrows, M.ncols
    A = [list(r) for r in M.data]
    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]
        while True:
            clean = True
            p = A[t][t]
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    clean = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    clean = False
            if clean:
                # divisibility condition on the remaining block
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
                continue
            # move the smallest remaining entry of row/col t into the pivot slot
            cands = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            cands += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            _, pi, pj = min(cands)
            A[t], A[pi] = A[pi], A[t]
            for row in A:
                row[t], row[pj] = row[pj], row[t]
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
        t += 1
    D = IntMatrix.from_rows(A, n)
    factors = [A[i][i] for i in range(min(m, n)) if A[i][i]]
    return D, factors


def is_saturated_sublattice(B: LatticeBasis) -> bool:
    """True iff ℤ^s / span(B) is torsion-free."""
    if not B.vectors:
        raise ValueError("empty basis")
    _, factors = smith_normal_form(B.as_matrix())
    return all(f == 1 for f in factors)


def lattice_span_basis(vectors: Sequence[Sequence[int]], ambient_rank: int) -> LatticeBasis:
    """A basis (HNF rows) of the lattice spanned by arbitrary integer vectors."""
    if not vectors:
        return LatticeBasis(ambient_rank, ())
    H, _ = hermite_normal_form(IntMatrix.from_rows(vectors, ambient_rank))
    return LatticeBasis(ambient_rank, tuple(r for r in H.data if any(r)))


def determinant(M) -> int:
    """Bareiss fraction-free determinant of a square matrix."""
    M = _as_matrix(M)
    n = M.nrows
    if n != M.ncols:
        raise ValueError("square matrix required")
    A = [list(r) for r in M.data]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


def solve_rational(M, rhs: Sequence[int | Fraction]) -> list[Fraction] | None:
    """One rational solution of ``M x = rhs`` (free variables set to 0), or None."""
    M = _as_matrix(M)
    m, n = M.nrows, M.ncols
    A = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(M.data, rhs)]
    pivots = []
    r = 0
    for j in range(n):
        piv = next((i for i in range(r, m) if A[i][j]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][j]
        A[r] = [x / p for x in A[r]]
        for i in range(m):
            if i != r and A[i][j]:
                q = A[i][j]
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
        pivots.append(j)
        r += 1
    if any(A[i][n] for i in range(r, m)):
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(pivots):
        x[j] = A[i][n]
    return x


def content(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def feasible_nonnegative(M, rhs: Sequence[int | Fraction]) -> list[Fraction] | None:
    """A point of {x ≥ 0 : M x = rhs} over ℚ, or None if the polyhedron is empty.

    Phase I of the simplex method with Bland's rule, in exact arithmetic.
    The returned point is checked against the constraints before returning.
    """
    M = _as_matrix(M)
    m, n = M.nrows, M.ncols
    rows = []
    for r, b in zip(M.data, rhs):
        r = [Fraction(x) for x in r]
        b = Fraction(b)
        if b < 0:
            r, b = [-x for x in r], -b
        rows.append(r + [Fraction(int(i == len(rows))) for i in range(m)] + [b])
    basis = [n + i for i in range(m)]
    width = n + m
    # phase-I objective: minimise the sum of artificials, as reduced costs
    cost = [Fraction(0)] * (width + 1)
    for r in rows:
        for j in range(n):
            cost[j] -= r[j]
        cost[width] -= r[width]
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, r in enumerate(rows):
            if r[enter] > 0:
                ratio = r[width] / r[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # cannot happen in phase I (objective bounded below)
            break
        i = best[1]
        p = rows[i][enter]
        rows[i] = [x / p for x in rows[i]]
        for k in range(m):
            if k != i and rows[k][enter]:
                q = rows[k][enter]
                rows[k] = [a - q * b for a, b in zip(rows[k], rows[i])]
        q = cost[enter]
        cost = [a - q * b for a, b in zip(cost, rows[i])]
        basis[i] = enter
    if cost[width] != 0:
        return None
    x = [Fraction(0)] * width
    for i, j in enumerate(basis):
        x[j] = rows[i][width]
    if any(x[n:]):
        return None
    x = x[:n]
    assert all(v >= 0 for v in x)
    assert all(sum(Fraction(a) * v for a, v in zip(r, x)) == Fraction(b) for r, b in zip(M.data, rhs))
    return x
